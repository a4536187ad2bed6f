#include <string>
#include <vector>

#include "supercyclic/cli.hpp"

int main(int argc, char** argv) {
  return supercyclic::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
