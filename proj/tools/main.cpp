#include "riesz/cli.hpp"

int main(int argc, char** argv) { return riesz::cli::main_entry(argc, argv); }
