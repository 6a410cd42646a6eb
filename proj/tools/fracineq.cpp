#include "fracineq/cli.hpp"

int main(int argc, char** argv) { return fracineq::cli::run_cli(argc, argv); }
