#include "invlog/cli.hpp"

int main(int argc, char** argv) { return invlog::cli::run_cli(argc, argv); }
