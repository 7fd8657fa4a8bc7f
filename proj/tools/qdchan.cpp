#include <iostream>

#include "qdchan/cli.hpp"

int main(int argc, char** argv) {
  using namespace qdchan::cli;
  try {
    const RunConfig config = parse_command_line(argc, argv);
    return run(config, std::cerr);
  } catch (const EarlyExit& e) {
    return e.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
