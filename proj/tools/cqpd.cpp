#include "cqp/cli/cli.hpp"

int main(int argc, char** argv) { return cqp::cli::cli_main(argc, argv); }
