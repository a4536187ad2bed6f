#ifndef SUPERCYCLIC_SERIALIZE_HPP_
#define SUPERCYCLIC_SERIALIZE_HPP_

// Canonical JSON records for vectors, targets, certificates and reports.
//
// Records are written with a fixed key order, two-space indentation and a
// trailing newline. Floats use the shortest decimal string that parses back
// to the same double, so serialize -> parse -> serialize is byte-identical.
// Complex scalars are [re, im] pairs. Parsing is strict: unknown or missing
// keys raise UsageError naming the key.
//
// Certificate key order:
//   format, version, field, scaledX, lambdaScale, operator, indices,
//   distances, theta, normSpec

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "supercyclic/dynamics.hpp"
#include "supercyclic/error.hpp"
#include "supercyclic/extractor.hpp"
#include "supercyclic/operators.hpp"
#include "supercyclic/space.hpp"

namespace supercyclic::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kCertificateFormat = "supercyclic-certificate";
inline constexpr std::string_view kDensityFormat = "supercyclic-density";
inline constexpr std::string_view kBuildFormat = "supercyclic-build";
inline constexpr std::string_view kVerificationFormat = "supercyclic-verification";

template <Field S>
constexpr std::string_view field_name() {
  return is_complex_v<S> ? "complex" : "real";
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] inline void bad_record(const std::string& msg) { fail(ErrorKind::UsageError, msg); }

inline Json parse_text(const std::string& text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad_record(std::string(what) + ": not valid JSON (" + e.what() + ")");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_record("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad_record("cannot write file '" + path + "'");
  out << text;
  if (!out) bad_record("write failed for '" + path + "'");
}

// --- strict field access ---------------------------------------------------

inline void expect_object(const Json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad_record(std::string(what) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) bad_record(std::string(what) + ": unknown key '" + key + "'");
  }
}

inline const Json& member(const Json& j, std::string_view key, std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) bad_record(std::string(what) + ": missing key '" + std::string(key) + "'");
  return *it;
}

inline Real get_real(const Json& j, std::string_view what) {
  if (!j.is_number()) bad_record(std::string(what) + ": expected a number");
  const Real v = j.get<Real>();
  if (!std::isfinite(v)) bad_record(std::string(what) + ": non-finite number");
  return v;
}

inline std::size_t get_index(const Json& j, std::string_view what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad_record(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline std::string get_string(const Json& j, std::string_view what) {
  if (!j.is_string()) bad_record(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

template <Field S>
void expect_field(const Json& j, std::string_view what) {
  const std::string f = get_string(member(j, "field", what), what);
  if (f != field_name<S>()) {
    bad_record(std::string(what) + ": field is '" + f + "' but '" + std::string(field_name<S>()) + "' was expected");
  }
}

/// "real" or "complex" from a record's field key.
inline std::string record_field(const Json& j) {
  if (!j.is_object()) bad_record("record: expected an object");
  const std::string f = get_string(member(j, "field", "record"), "record field");
  if (f != "real" && f != "complex") bad_record("record: field must be 'real' or 'complex'");
  return f;
}

// --- scalars and vectors ---------------------------------------------------

template <Field S>
Json scalar_json(const S& v) {
  if constexpr (is_complex_v<S>) {
    return Json::array({v.real(), v.imag()});
  } else {
    return Json(v);
  }
}

template <Field S>
S scalar_from(const Json& j, std::string_view what) {
  if constexpr (is_complex_v<S>) {
    if (!j.is_array() || j.size() != 2) bad_record(std::string(what) + ": complex scalar must be [re, im]");
    return Complex(get_real(j[0], what), get_real(j[1], what));
  } else {
    return get_real(j, what);
  }
}

template <Field S>
Json scalars_json(const std::vector<S>& v) {
  Json out = Json::array();
  for (const S& x : v) out.push_back(scalar_json(x));
  return out;
}

template <Field S>
std::vector<S> scalars_from(const Json& j, std::string_view what) {
  if (!j.is_array()) bad_record(std::string(what) + ": expected an array");
  std::vector<S> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(scalar_from<S>(x, what));
  return out;
}

inline Json reals_json(const std::vector<Real>& v) { return scalars_json<Real>(v); }
inline std::vector<Real> reals_from(const Json& j, std::string_view what) { return scalars_from<Real>(j, what); }

template <Field S>
Json vector_json(const Vec<S>& v) {
  Json j;
  j["field"] = field_name<S>();
  j["dim"] = v.size();
  j["entries"] = scalars_json(v.data());
  return j;
}

/// A vector record, or the "x" member of a build record.
template <Field S>
Vec<S> vector_from(const Json& j) {
  if (j.is_object() && j.contains("format")) {
    if (get_string(j["format"], "record format") != kBuildFormat) bad_record("vector: unsupported record format");
    return vector_from<S>(member(j, "x", "build record"));
  }
  expect_object(j, "vector", {"field", "dim", "entries"});
  expect_field<S>(j, "vector");
  const std::size_t dim = get_index(member(j, "dim", "vector"), "vector dim");
  auto entries = scalars_from<S>(member(j, "entries", "vector"), "vector entries");
  if (entries.size() != dim) bad_record("vector: entries length differs from dim");
  try {
    return Vec<S>(std::move(entries));
  } catch (const Error& e) {
    bad_record(std::string("vector: ") + e.what());
  }
}

// --- norms and operators ---------------------------------------------------

inline Json norm_json(const NormSpec& spec) {
  Json j;
  switch (spec.kind) {
    case NormSpec::Kind::L1: j["kind"] = "l1"; break;
    case NormSpec::Kind::L2: j["kind"] = "l2"; break;
    case NormSpec::Kind::LInf: j["kind"] = "linf"; break;
    case NormSpec::Kind::P:
      j["kind"] = "p";
      j["p"] = spec.p;
      break;
  }
  if (spec.weights) j["weights"] = reals_json(*spec.weights);
  return j;
}

inline NormSpec norm_from(const Json& j) {
  expect_object(j, "normSpec", {"kind", "p", "weights"});
  const std::string kind = get_string(member(j, "kind", "normSpec"), "normSpec kind");
  NormSpec spec;
  if (kind == "l1") {
    spec = NormSpec::l1();
  } else if (kind == "l2") {
    spec = NormSpec::l2();
  } else if (kind == "linf") {
    spec = NormSpec::linf();
  } else if (kind == "p") {
    const Real p = get_real(member(j, "p", "normSpec"), "normSpec p");
    if (p == 2.0) bad_record("normSpec: p = 2 must be written as kind 'l2'");
    try {
      spec = NormSpec::lp(p);
    } catch (const Error& e) {
      bad_record(std::string("normSpec: ") + e.what());
    }
  } else {
    bad_record("normSpec: unknown kind '" + kind + "'");
  }
  if (kind != "p" && j.contains("p")) bad_record("normSpec: key 'p' only applies to kind 'p'");
  if (j.contains("weights")) {
    try {
      spec = spec.with_weights(reals_from(j["weights"], "normSpec weights"));
    } catch (const Error& e) {
      bad_record(std::string("normSpec: ") + e.what());
    }
  }
  return spec;
}

template <Field S>
Json operator_json(const OperatorSpec<S>& op) {
  Json j;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BackwardShift<S>>) {
          j["kind"] = "backwardShift";
          j["weights"] = scalars_json(m.weights);
          j["bound"] = m.bound;
        } else if constexpr (std::is_same_v<M, RolewiczMultiple>) {
          j["kind"] = "rolewicz";
          j["lambda"] = m.lambda;
        } else if constexpr (std::is_same_v<M, ForwardShift>) {
          j["kind"] = "forwardShift";
        } else if constexpr (std::is_same_v<M, DenseMatrix<S>>) {
          j["kind"] = "denseMatrix";
          j["n"] = m.n;
          j["entries"] = scalars_json(m.entries);
        } else {
          j["kind"] = "diagonal";
          j["d"] = scalars_json(m.d);
        }
      },
      op.model());
  return j;
}

template <Field S>
OperatorSpec<S> operator_from(const Json& j) {
  if (!j.is_object()) bad_record("operator: expected an object");
  const std::string kind = get_string(member(j, "kind", "operator"), "operator kind");
  try {
    if (kind == "backwardShift") {
      expect_object(j, "operator", {"kind", "weights", "bound"});
      return OperatorSpec<S>::backward_shift(scalars_from<S>(member(j, "weights", "operator"), "weights"),
                                             get_real(member(j, "bound", "operator"), "bound"));
    }
    if (kind == "rolewicz") {
      expect_object(j, "operator", {"kind", "lambda"});
      return OperatorSpec<S>::rolewicz(get_real(member(j, "lambda", "operator"), "lambda"));
    }
    if (kind == "forwardShift") {
      expect_object(j, "operator", {"kind"});
      return OperatorSpec<S>::forward_shift();
    }
    if (kind == "denseMatrix") {
      expect_object(j, "operator", {"kind", "n", "entries"});
      return OperatorSpec<S>::dense(get_index(member(j, "n", "operator"), "n"),
                                    scalars_from<S>(member(j, "entries", "operator"), "entries"));
    }
    if (kind == "diagonal") {
      expect_object(j, "operator", {"kind", "d"});
      return OperatorSpec<S>::diagonal(scalars_from<S>(member(j, "d", "operator"), "d"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UsageError) throw;
    bad_record(std::string("operator: ") + e.what());
  }
  bad_record("operator: unknown kind '" + kind + "'");
}

// --- targets ---------------------------------------------------------------

/// {"field", "targets": [{"entries": [...], "epsilon": e}, ...]}. Entries
/// list the leading coordinates of a finitely supported target and are
/// zero-extended to dim.
template <Field S>
TargetSet<S> targets_from(const Json& j, std::size_t dim) {
  expect_object(j, "targets file", {"field", "targets"});
  expect_field<S>(j, "targets file");
  const Json& list = member(j, "targets", "targets file");
  if (!list.is_array()) bad_record("targets file: 'targets' must be an array");
  TargetSet<S> ts;
  for (const auto& t : list) {
    expect_object(t, "target", {"entries", "epsilon"});
    auto entries = scalars_from<S>(member(t, "entries", "target"), "target entries");
    const Real eps = get_real(member(t, "epsilon", "target"), "target epsilon");
    while (entries.size() < 2) entries.push_back(S{});
    Vec<S> v(std::move(entries));
    ts.targets.push_back(embed(v, dim));
    ts.epsilons.push_back(eps);
  }
  return ts;
}

template <Field S>
Json targets_json(const TargetSet<S>& ts) {
  Json j;
  j["field"] = field_name<S>();
  Json list = Json::array();
  for (std::size_t i = 0; i < ts.targets.size(); ++i) {
    const auto& t = ts.targets[i];
    std::vector<S> head(t.data().begin(), t.data().begin() + static_cast<std::ptrdiff_t>(t.support_length()));
    Json item;
    item["entries"] = scalars_json(head);
    item["epsilon"] = ts.epsilons[i];
    list.push_back(std::move(item));
  }
  j["targets"] = std::move(list);
  return j;
}

// --- certificates ----------------------------------------------------------

template <Field S>
Json certificate_json(const Certificate<S>& c) {
  Json j;
  j["format"] = kCertificateFormat;
  j["version"] = kFormatVersion;
  j["field"] = field_name<S>();
  j["scaledX"] = scalars_json(c.scaled_x.data());
  j["lambdaScale"] = c.lambda_scale;
  j["operator"] = operator_json(c.op);
  j["indices"] = c.indices;
  j["distances"] = reals_json(c.distances);
  j["theta"] = c.theta;
  j["normSpec"] = norm_json(c.norm_spec);
  return j;
}

template <Field S>
Certificate<S> certificate_from(const Json& j) {
  expect_object(j, "certificate", {"format", "version", "field", "scaledX", "lambdaScale", "operator", "indices",
                                   "distances", "theta", "normSpec"});
  if (get_string(member(j, "format", "certificate"), "format") != kCertificateFormat) {
    bad_record("certificate: unexpected format");
  }
  if (get_index(member(j, "version", "certificate"), "version") != static_cast<std::size_t>(kFormatVersion)) {
    bad_record("certificate: unsupported version");
  }
  expect_field<S>(j, "certificate");
  auto xs = scalars_from<S>(member(j, "scaledX", "certificate"), "scaledX");
  Vec<S> scaled = [&] {
    try {
      return Vec<S>(std::move(xs));
    } catch (const Error& e) {
      bad_record(std::string("certificate scaledX: ") + e.what());
    }
  }();
  const Json& idx = member(j, "indices", "certificate");
  if (!idx.is_array()) bad_record("certificate: indices must be an array");
  std::vector<std::size_t> indices;
  for (const auto& n : idx) indices.push_back(get_index(n, "certificate index"));
  return Certificate<S>{std::move(scaled),
                        get_real(member(j, "lambdaScale", "certificate"), "lambdaScale"),
                        operator_from<S>(member(j, "operator", "certificate")),
                        std::move(indices),
                        reals_from(member(j, "distances", "certificate"), "distances"),
                        get_real(member(j, "theta", "certificate"), "theta"),
                        norm_from(member(j, "normSpec", "certificate"))};
}

// --- reports ---------------------------------------------------------------

template <Field S>
Json density_json(const DensityReport<S>& r, const TargetSet<S>& ts) {
  Json j;
  j["format"] = kDensityFormat;
  j["version"] = kFormatVersion;
  j["field"] = field_name<S>();
  j["horizon"] = r.horizon;
  j["normSpec"] = norm_json(r.norm_spec);
  j["zeroOrbitAt"] = r.zero_orbit_at ? Json(*r.zero_orbit_at) : Json(nullptr);
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json item;
    item["target"] = rec.target_index;
    item["bestN"] = rec.best_n;
    item["bestC"] = scalar_json(rec.best_c);
    item["error"] = rec.error;
    item["epsilon"] = ts.epsilons[rec.target_index];
    item["withinEpsilon"] = rec.error <= ts.epsilons[rec.target_index];
    recs.push_back(std::move(item));
  }
  j["records"] = std::move(recs);
  return j;
}

template <Field S>
Json build_json(Real lambda, const BuiltVector<S>& b) {
  Json j;
  j["format"] = kBuildFormat;
  j["version"] = kFormatVersion;
  j["field"] = field_name<S>();
  j["lambda"] = lambda;
  Json plan = Json::array();
  for (const auto& blk : b.plan) {
    Json item;
    item["target"] = blk.target_index;
    item["offset"] = blk.offset;
    item["boundedError"] = blk.bounded_error;
    plan.push_back(std::move(item));
  }
  j["plan"] = std::move(plan);
  j["x"] = vector_json(b.x);
  return j;
}

inline Json verification_json(const VerificationReport& r) {
  Json j;
  j["format"] = kVerificationFormat;
  j["version"] = kFormatVersion;
  j["passed"] = r.passed;
  j["failedCheck"] = to_string(r.failed_check);
  j["message"] = r.message;
  j["maxRelativeDeviation"] = r.max_relative_deviation;
  j["recomputed"] = reals_json(r.recomputed);
  return j;
}

inline Json error_json(const Error& e) {
  Json j;
  j["error"] = to_string(e.kind());
  j["message"] = e.what();
  j["step"] = e.step() ? Json(*e.step()) : Json(nullptr);
  return j;
}

}  // namespace supercyclic::io

#endif  // SUPERCYCLIC_SERIALIZE_HPP_
