#include "sympcert/cli.hpp"

int main(int argc, char** argv) { return sympcert::cli::run(argc, argv); }
