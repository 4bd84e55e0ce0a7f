#include "excesslab/cli.hpp"

int main(int argc, char** argv) { return excesslab::main_entry(argc, argv); }
