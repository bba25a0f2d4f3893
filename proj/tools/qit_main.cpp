#include "qit/cli.hpp"

int main(int argc, char** argv) { return qit::cli::main_cli(argc, argv); }
