#include "lqlab/cli/commands.hpp"

int main(int argc, char** argv) { return lq::cli::main_entry(argc, argv); }
