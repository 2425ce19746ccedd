#include "cli_app.hpp"

int main(int argc, char** argv) {
  singtrace::cli::RunConfig config;
  if (auto code = singtrace::cli::parse_args(argc, argv, config)) return *code;
  return singtrace::cli::run(config);
}
