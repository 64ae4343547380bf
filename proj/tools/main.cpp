#include "expbern/cli.hpp"

int main(int argc, char** argv) { return expbern::cli::cli_main(argc, argv); }
