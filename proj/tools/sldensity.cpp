#include <iostream>

#include "sldensity/cli.hpp"

int main(int argc, char** argv) {
  sld::cli::RunConfig config;
  try {
    config = sld::cli::parse_command_line(argc, argv);
  } catch (const sld::cli::HelpShown&) {
    return 0;
  } catch (const sld::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return sld::cli::run(config, std::cout, std::cerr);
}
