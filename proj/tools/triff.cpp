#include <vector>

#include "triff/cli.hpp"

int main(int argc, char** argv) {
  return triff::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
