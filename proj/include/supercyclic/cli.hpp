#ifndef SUPERCYCLIC_CLI_HPP_
#define SUPERCYCLIC_CLI_HPP_

// Command-line front end: argument and config-file parsing, command
// dispatch and the exit-status contract.
//
//   0  success (verify: PASS)
//   1  domain error or verify FAIL; a JSON error record goes to stderr
//   2  usage error
//
// A --config JSON object may set any long option by name (without the
// dashes); options given on the command line take precedence.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "supercyclic/dynamics.hpp"
#include "supercyclic/error.hpp"
#include "supercyclic/extractor.hpp"
#include "supercyclic/operators.hpp"
#include "supercyclic/serialize.hpp"
#include "supercyclic/space.hpp"
#include "supercyclic/subspace.hpp"

namespace supercyclic::cli {

enum class Command { Extract, Verify, Density, Build, Dist };
enum class OutputFormat { Record, Text };

struct RunConfig {
  Command command = Command::Extract;
  bool complex_field = false;
  std::optional<std::string> op;  // operator descriptor, e.g. "rolewicz:2"
  std::optional<std::size_t> dim;
  std::size_t steps = 1;
  Real theta = 1.0;
  Real margin = 0.5;
  std::optional<std::size_t> horizon;  // defaults to the dimension
  NormSpec norm = NormSpec::l2();
  std::optional<std::string> targets;
  std::optional<std::string> x;
  std::vector<std::string> span;
  std::optional<std::string> cert;
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool safety_ratio = true;
  OutputFormat format = OutputFormat::Record;
};

namespace detail {

[[noreturn]] inline void usage(const std::string& msg) { fail(ErrorKind::UsageError, msg); }

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<Real> parse_real(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Real v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// "a", "bi", "a+bi", "a-bi" (also "j" for the imaginary unit).
template <Field S>
std::optional<S> parse_scalar(std::string_view s) {
  if constexpr (!is_complex_v<S>) {
    return parse_real(s);
  } else {
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i' && s.back() != 'j') {
      auto re = parse_real(s);
      if (!re) return std::nullopt;
      return Complex(*re, 0);
    }
    s.remove_suffix(1);
    std::size_t split_at = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split_at = k;
        break;
      }
    }
    auto imag_part = [](std::string_view t) -> std::optional<Real> {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return parse_real(t);
    };
    if (split_at == std::string_view::npos) {
      auto im = imag_part(s);
      if (!im) return std::nullopt;
      return Complex(0, *im);
    }
    auto re = parse_real(s.substr(0, split_at));
    auto im = imag_part(s.substr(split_at));
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
  }
}

template <Field S>
std::vector<S> parse_list(std::string_view s, std::string_view what) {
  std::vector<S> out;
  for (const auto& tok : split(s, ',')) {
    auto v = parse_scalar<S>(tok);
    if (!v) usage(std::string(what) + ": cannot parse '" + tok + "' as a number");
    out.push_back(*v);
  }
  return out;
}

inline std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) usage(std::string(what) + ": expected an integer, got '" + std::string(s) + "'");
  return v;
}

inline NormSpec parse_norm(const std::string& s) {
  if (s == "l1") return NormSpec::l1();
  if (s == "l2") return NormSpec::l2();
  if (s == "linf") return NormSpec::linf();
  if (s.rfind("p:", 0) == 0) {
    const auto p = parse_real(std::string_view(s).substr(2));
    if (!p || !(*p > 1.0)) usage("--norm: p must be a real > 1 (example: --norm p:3)");
    return NormSpec::lp(*p);
  }
  usage("--norm: unknown norm '" + s + "' (expected l1, l2, linf or p:<value>)");
}

inline Command parse_command(const std::string& s) {
  static const std::map<std::string, Command> table = {{"extract", Command::Extract},
                                                       {"verify", Command::Verify},
                                                       {"density", Command::Density},
                                                       {"build", Command::Build},
                                                       {"dist", Command::Dist}};
  const auto it = table.find(s);
  if (it == table.end()) usage("unknown command '" + s + "' (expected extract, verify, density, build or dist)");
  return it->second;
}

template <Field S>
OperatorSpec<S> make_operator_unchecked(const std::string& text, std::size_t dim) {
  const auto parts = split(text, ':');
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) -> const std::string& {
    if (parts.size() <= i) usage("--operator '" + text + "': missing argument (example: --operator rolewicz:2)");
    return parts[i];
  };
  if (kind == "rolewicz") {
    const auto lambda = parse_real(arg(1));
    if (!lambda) usage("--operator rolewicz:<lambda>: cannot parse lambda");
    return OperatorSpec<S>::rolewicz(*lambda);
  }
  if (kind == "fshift") return OperatorSpec<S>::forward_shift();
  if (kind == "identity") return OperatorSpec<S>::identity(dim);
  if (kind == "bshift") {
    const std::string& rule = arg(1);
    if (rule == "linear") return OperatorSpec<S>::backward_shift_linear(dim);
    if (rule == "const") {
      const auto w = parse_scalar<S>(arg(2));
      if (!w) usage("--operator bshift:const:<w>: cannot parse weight");
      return OperatorSpec<S>::backward_shift_constant(dim, *w);
    }
    if (rule == "list") {
      auto w = parse_list<S>(arg(2), "--operator bshift:list");
      if (w.size() < dim) usage("--operator bshift:list: need at least dim weights");
      return OperatorSpec<S>::backward_shift(std::move(w));
    }
    usage("--operator bshift: rule must be const:<w>, linear or list:<w0,w1,...>");
  }
  if (kind == "diag") return OperatorSpec<S>::diagonal(parse_list<S>(arg(1), "--operator diag"));
  if (kind == "matrix") {
    const std::string path = text.substr(std::string("matrix:").size());
    const io::Json j = io::parse_text(io::read_file(path), path);
    io::expect_object(j, "matrix file", {"field", "n", "entries"});
    io::expect_field<S>(j, "matrix file");
    return OperatorSpec<S>::dense(io::get_index(io::member(j, "n", "matrix file"), "n"),
                                  io::scalars_from<S>(io::member(j, "entries", "matrix file"), "entries"));
  }
  usage("--operator: unknown operator '" + text +
        "' (expected rolewicz:<l>, fshift, bshift:const:<w>, bshift:linear, bshift:list:<...>, diag:<...>, "
        "matrix:<file> or identity)");
}

/// Operator descriptor -> OperatorSpec in dimension dim. Invalid
/// parameters are usage errors.
template <Field S>
OperatorSpec<S> make_operator(const std::string& text, std::size_t dim) {
  try {
    return make_operator_unchecked<S>(text, dim);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UsageError) throw;
    usage("--operator '" + text + "': " + e.what());
  }
}

/// Vector source: e:<i>, random, an inline list, or a vector/build record file.
template <Field S>
Vec<S> load_vector(const std::string& src, std::optional<std::size_t> dim, std::uint64_t seed, std::string_view what) {
  if (src.rfind("e:", 0) == 0) {
    if (!dim) usage(std::string(what) + " e:<i> needs --dim");
    return Vec<S>::unit(*dim, parse_count(std::string_view(src).substr(2), what));
  }
  if (src == "random") {
    if (!dim) usage(std::string(what) + " random needs --dim");
    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> g;
    std::vector<S> v(*dim);
    for (S& x : v) {
      if constexpr (is_complex_v<S>) {
        const Real re = g(rng);
        x = Complex(re, g(rng));
      } else {
        x = g(rng);
      }
    }
    return Vec<S>(std::move(v));
  }
  if (std::filesystem::is_regular_file(src)) {
    Vec<S> v = io::vector_from<S>(io::parse_text(io::read_file(src), src));
    if (dim) require_same_dim(v.size(), *dim, std::string(what) + " file");
    return v;
  }
  const auto first = src.find_first_not_of(" ");
  if (first == std::string::npos || !(std::isdigit(static_cast<unsigned char>(src[first])) || src[first] == '-' ||
                                      src[first] == '+' || src[first] == '.')) {
    usage(std::string(what) + ": '" + src + "' is neither a file nor an inline list (example: --x 1,0,-2)");
  }
  auto entries = parse_list<S>(src, what);
  while (entries.size() < 2) entries.push_back(S{});
  Vec<S> v(std::move(entries));
  return dim ? embed(v, *dim) : v;
}

template <Field S>
std::string fmt(const S& v) {
  if constexpr (is_complex_v<S>) {
    return io::Json::array({v.real(), v.imag()}).dump();
  } else {
    return io::Json(v).dump();
  }
}

}  // namespace detail

/// Parses argv-style arguments (without the program name). When
/// config_text is empty and --config is given, the file is read.
inline RunConfig parse_config(const std::vector<std::string>& args,
                              std::optional<std::string> config_text = std::nullopt) {
  CLI::App app("Orbit-span extraction and certificate verification", "supercyclic");
  app.set_help_flag();
  std::string command, field, norm, format;
  std::optional<std::string> op, targets, x, cert, out, config_path;
  std::optional<std::size_t> dim, steps, horizon;
  std::optional<Real> theta, margin;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::vector<std::string> span;
  bool no_safety = false;

  app.add_option("command", command, "extract | verify | density | build | dist");
  app.add_option("--operator", op, "rolewicz:<l> | fshift | bshift:const:<w> | bshift:linear | "
                                   "bshift:list:<w0,...> | diag:<d0,...> | matrix:<file> | identity");
  app.add_option("--dim", dim, "truncation dimension N");
  app.add_option("--steps", steps, "number of indices K");
  app.add_option("--theta", theta, "distance threshold");
  app.add_option("--margin", margin, "rescaling margin");
  app.add_option("--horizon", horizon, "largest candidate index (default: dim)");
  app.add_option("--norm", norm, "l1 | l2 | linf | p:<value>");
  app.add_option("--field", field, "real | complex");
  app.add_option("--targets", targets, "targets file");
  app.add_option("--x", x, "vector: file, inline list, e:<i> or random");
  app.add_option("--span", span, "spanning vectors for dist (repeatable)");
  app.add_option("--cert", cert, "certificate file for verify");
  app.add_option("--out", out, "output file");
  app.add_option("--seed", seed, "seed for random vectors");
  app.add_option("--threads", threads, "candidate scan threads");
  app.add_option("--format", format, "record | text");
  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--no-safety-ratio", no_safety, "allow steps > dim/8");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    detail::usage(std::string(e.what()) + " (example: extract --operator rolewicz:2 --dim 1024 --steps 16 --x random)");
  }

  if (!config_text && config_path) config_text = io::read_file(*config_path);
  if (config_text) {
    const io::Json j = io::parse_text(*config_text, "config");
    if (!j.is_object()) detail::usage("config: expected a JSON object");
    auto given = [&](const char* name) { return app.get_option(std::string("--") + name)->count() > 0; };
    auto str = [](const io::Json& v, const std::string& key) {
      if (!v.is_string()) detail::usage("config key '" + key + "': expected a string");
      return v.get<std::string>();
    };
    auto count = [](const io::Json& v, const std::string& key) {
      if (!v.is_number_unsigned()) detail::usage("config key '" + key + "': expected a nonnegative integer");
      return v.get<std::size_t>();
    };
    auto real = [](const io::Json& v, const std::string& key) {
      if (!v.is_number()) detail::usage("config key '" + key + "': expected a number");
      return v.get<Real>();
    };
    for (const auto& [key, v] : j.items()) {
      if (key == "command") {
        if (command.empty()) command = str(v, key);
      } else if (key == "operator") {
        if (!given("operator")) op = str(v, key);
      } else if (key == "dim") {
        if (!given("dim")) dim = count(v, key);
      } else if (key == "steps") {
        if (!given("steps")) steps = count(v, key);
      } else if (key == "theta") {
        if (!given("theta")) theta = real(v, key);
      } else if (key == "margin") {
        if (!given("margin")) margin = real(v, key);
      } else if (key == "horizon") {
        if (!given("horizon")) horizon = count(v, key);
      } else if (key == "norm") {
        if (!given("norm")) norm = str(v, key);
      } else if (key == "field") {
        if (!given("field")) field = str(v, key);
      } else if (key == "targets") {
        if (!given("targets")) targets = str(v, key);
      } else if (key == "x") {
        if (!given("x")) x = str(v, key);
      } else if (key == "span") {
        if (!given("span")) {
          if (!v.is_array()) detail::usage("config key 'span': expected an array of strings");
          for (const auto& s : v) span.push_back(str(s, key));
        }
      } else if (key == "cert") {
        if (!given("cert")) cert = str(v, key);
      } else if (key == "out") {
        if (!given("out")) out = str(v, key);
      } else if (key == "seed") {
        if (!given("seed")) seed = count(v, key);
      } else if (key == "threads") {
        if (!given("threads")) threads = static_cast<unsigned>(count(v, key));
      } else if (key == "format") {
        if (!given("format")) format = str(v, key);
      } else if (key == "no-safety-ratio") {
        if (!v.is_boolean()) detail::usage("config key 'no-safety-ratio': expected true or false");
        if (!no_safety) no_safety = v.get<bool>();
      } else {
        detail::usage("config: unknown key '" + key + "' (example: {\"operator\": \"rolewicz:2\", \"steps\": 8})");
      }
    }
  }

  if (command.empty()) detail::usage("missing command (example: supercyclic extract --operator fshift --dim 64 --x e:0)");
  RunConfig cfg;
  cfg.command = detail::parse_command(command);
  if (!field.empty() && field != "real" && field != "complex") detail::usage("--field: expected real or complex");
  cfg.complex_field = field == "complex";
  cfg.op = op;
  cfg.dim = dim;
  if (steps) cfg.steps = *steps;
  if (theta) cfg.theta = *theta;
  if (margin) cfg.margin = *margin;
  cfg.horizon = horizon;
  if (!norm.empty()) cfg.norm = detail::parse_norm(norm);
  cfg.targets = targets;
  cfg.x = x;
  cfg.span = span;
  cfg.cert = cert;
  cfg.out = out;
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  cfg.safety_ratio = !no_safety;
  if (!format.empty()) {
    if (format == "record") {
      cfg.format = OutputFormat::Record;
    } else if (format == "text") {
      cfg.format = OutputFormat::Text;
    } else {
      detail::usage("--format: expected record or text");
    }
  }

  // Per-command requirements.
  if (cfg.dim && *cfg.dim < 2) detail::usage("--dim must be at least 2");
  if (cfg.steps < 1) detail::usage("--steps must be at least 1");
  if (cfg.threads < 1) detail::usage("--threads must be at least 1");
  auto need = [&](bool have, const char* flag, const char* example) {
    if (!have) detail::usage(std::string(command) + ": missing " + flag + " (example: " + example + ")");
  };
  switch (cfg.command) {
    case Command::Extract:
      need(cfg.op.has_value(), "--operator", "--operator rolewicz:2");
      need(cfg.x.has_value(), "vector source --x", "--x e:0");
      break;
    case Command::Verify:
      need(cfg.cert.has_value(), "--cert", "--cert cert.json");
      need(cfg.x.has_value(), "vector source --x", "--x x.json");
      break;
    case Command::Density:
      need(cfg.op.has_value(), "--operator", "--operator rolewicz:2");
      need(cfg.x.has_value(), "vector source --x", "--x x.json");
      need(cfg.targets.has_value(), "--targets", "--targets targets.json");
      break;
    case Command::Build:
      need(cfg.op.has_value(), "--operator", "--operator rolewicz:2");
      need(cfg.targets.has_value(), "--targets", "--targets targets.json");
      need(cfg.dim.has_value(), "--dim", "--dim 1024");
      if (cfg.op->rfind("rolewicz:", 0) != 0) detail::usage("build: only --operator rolewicz:<lambda> has a builder");
      break;
    case Command::Dist:
      need(cfg.x.has_value(), "vector source --x", "--x 1,1,1");
      break;
  }
  if (cfg.targets && !std::filesystem::is_regular_file(*cfg.targets)) {
    detail::usage("--targets: no such file '" + *cfg.targets + "'");
  }
  if (cfg.cert && !std::filesystem::is_regular_file(*cfg.cert)) detail::usage("--cert: no such file '" + *cfg.cert + "'");
  return cfg;
}

namespace detail {

inline void emit(const RunConfig& cfg, const io::Json& record, const std::string& text, std::ostream& out) {
  if (cfg.out) io::write_file(*cfg.out, io::dump(record));
  if (cfg.format == OutputFormat::Text) {
    out << text;
  } else if (!cfg.out) {
    out << io::dump(record);
  }
}

template <Field S>
int run_typed(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::Extract: {
      const Vec<S> x = load_vector<S>(*cfg.x, cfg.dim, cfg.seed, "--x");
      const std::size_t dim = x.size();
      ExtractionConfig ec;
      ec.theta = cfg.theta;
      ec.margin = cfg.margin;
      ec.horizon = cfg.horizon.value_or(dim);
      ec.max_steps = cfg.steps;
      ec.norm_spec = cfg.norm;
      ec.enforce_safety_ratio = cfg.safety_ratio;
      ec.threads = cfg.threads;
      try {
        ec.validate(dim);
      } catch (const Error& e) {
        usage(e.what());
      }
      const auto cert = extract_subsequence(make_operator<S>(*cfg.op, dim), x, ec);
      std::ostringstream text;
      text << "lambdaScale " << fmt<Real>(cert.lambda_scale) << "\n";
      text << "k n_k d_k\n";
      for (std::size_t k = 0; k < cert.indices.size(); ++k) {
        text << k + 1 << ' ' << cert.indices[k] << ' ' << fmt<Real>(cert.distances[k]) << "\n";
      }
      emit(cfg, io::certificate_json(cert), text.str(), out);
      return 0;
    }
    case Command::Verify: {
      const io::Json j = io::parse_text(io::read_file(*cfg.cert), *cfg.cert);
      const auto cert = io::certificate_from<S>(j);
      const Vec<S> x = load_vector<S>(*cfg.x, cfg.dim ? cfg.dim : std::optional(cert.scaled_x.size()), cfg.seed, "--x");
      const OperatorSpec<S> op = cfg.op ? make_operator<S>(*cfg.op, x.size()) : cert.op;
      const VerificationReport rep = verify_certificate(cert, op, x);
      if (cfg.out) io::write_file(*cfg.out, io::dump(io::verification_json(rep)));
      if (rep.passed) {
        out << "PASS (" << cert.indices.size() << " indices, max relative deviation "
            << fmt<Real>(rep.max_relative_deviation) << ")\n";
        return 0;
      }
      out << "FAIL " << to_string(rep.failed_check) << ": " << rep.message << "\n";
      return 1;
    }
    case Command::Density: {
      const Vec<S> x = load_vector<S>(*cfg.x, cfg.dim, cfg.seed, "--x");
      const auto ts = io::targets_from<S>(io::parse_text(io::read_file(*cfg.targets), *cfg.targets), x.size());
      const auto report = density_check(make_operator<S>(*cfg.op, x.size()), x, ts, cfg.horizon.value_or(x.size()), cfg.norm);
      std::ostringstream text;
      text << "target best_n best_c error epsilon\n";
      for (const auto& r : report.records) {
        text << r.target_index << ' ' << r.best_n << ' ' << fmt<S>(r.best_c) << ' ' << fmt<Real>(r.error) << ' '
             << fmt<Real>(ts.epsilons[r.target_index]) << "\n";
      }
      if (report.zero_orbit_at) text << "orbit vanished at n = " << *report.zero_orbit_at << "\n";
      emit(cfg, io::density_json(report, ts), text.str(), out);
      return 0;
    }
    case Command::Build: {
      const auto lambda = parse_real(std::string_view(*cfg.op).substr(std::string("rolewicz:").size()));
      if (!lambda) usage("--operator rolewicz:<lambda>: cannot parse lambda");
      const auto ts = io::targets_from<S>(io::parse_text(io::read_file(*cfg.targets), *cfg.targets), *cfg.dim);
      const auto built = build_supercyclic_vector(*lambda, ts, *cfg.dim, cfg.norm);
      std::ostringstream text;
      text << "target offset bounded_error\n";
      for (const auto& b : built.plan) text << b.target_index << ' ' << b.offset << ' ' << fmt<Real>(b.bounded_error) << "\n";
      emit(cfg, io::build_json(*lambda, built), text.str(), out);
      return 0;
    }
    case Command::Dist: {
      const Vec<S> e = load_vector<S>(*cfg.x, cfg.dim, cfg.seed, "--x");
      std::vector<Vec<S>> gens;
      for (std::size_t i = 0; i < cfg.span.size(); ++i) {
        gens.push_back(load_vector<S>(cfg.span[i], e.size(), cfg.seed + i + 1, "--span"));
      }
      const SpanBasis<S> y = SpanBasis<S>::of(e.size(), gens);
      const Real d = distance(e, y, cfg.norm);
      io::Json j;
      j["format"] = "supercyclic-distance";
      j["version"] = io::kFormatVersion;
      j["field"] = io::field_name<S>();
      j["normSpec"] = io::norm_json(cfg.norm);
      j["rank"] = y.rank();
      j["distance"] = d;
      emit(cfg, j, "distance " + fmt<Real>(d) + " (rank " + std::to_string(y.rank()) + ")\n", out);
      return 0;
    }
  }
  return 0;
}

}  // namespace detail

/// Executes a parsed configuration. Domain errors propagate as Error.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout) {
  if (cfg.complex_field) return detail::run_typed<Complex>(cfg, out);
  return detail::run_typed<Real>(cfg, out);
}

/// Full entry point with the exit-status contract.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    out << "usage: supercyclic <extract|verify|density|build|dist> [options]\n"
           "  --operator rolewicz:<l> | fshift | bshift:const:<w> | bshift:linear | bshift:list:<w0,...>\n"
           "             | diag:<d0,...> | matrix:<file> | identity\n"
           "  --dim N  --steps K  --theta T  --margin M  --horizon H\n"
           "  --norm l1|l2|linf|p:<v>  --field real|complex\n"
           "  --x <file|list|e:i|random>  --span <...> (dist)  --targets <file>  --cert <file>\n"
           "  --out <file>  --format record|text  --seed S  --threads P  --no-safety-ratio\n"
           "  --config <file.json>\n";
    return args.empty() ? 2 : 0;
  }
  try {
    const RunConfig cfg = parse_config(args);
    return run(cfg, out);
  } catch (const Error& e) {
    err << io::error_json(e).dump() << "\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    err << io::Json{{"error", "Internal"}, {"message", e.what()}, {"step", nullptr}}.dump() << "\n";
    return 1;
  }
}

}  // namespace supercyclic::cli

#endif  // SUPERCYCLIC_CLI_HPP_
