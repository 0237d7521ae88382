#include "commands.hpp"

int main(int argc, char** argv) { return rdsir::cli::main_entry(argc, argv); }
