#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "quasipack/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const quasipack::ParseOutcome parsed = quasipack::parse_cli(args);
    if (parsed.help_requested) {
      std::cout << parsed.help_text;
      return 0;
    }
    const auto& request = *parsed.request;
    // Counters go to stdout unless the points themselves do.
    const bool points_on_stdout =
        request.command == quasipack::Command::generate && !request.out;
    std::ostream& log = points_on_stdout ? std::cerr : std::cout;
    return quasipack::execute(request, std::cout, log);
  } catch (const std::exception& e) {
    std::cerr << "quasipack: error: " << e.what() << '\n';
    return 2;
  }
}
