#include <vector>

#include "disagg/cli.hpp"

int main(int argc, char** argv) {
  return disagg::run_cli({argv + 1, argv + argc});
}
