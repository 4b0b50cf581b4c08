#include <csignal>
#include <iostream>

#include "matsym_cli.hpp"

namespace {
void on_sigint(int) { matsym::cli::interrupted().store(true); }
}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  std::vector<std::string> args(argv + 1, argv + argc);
  return matsym::cli::run(args, std::cout, std::cerr);
}
