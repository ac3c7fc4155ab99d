#include "plearn/cli.hpp"

int main(int argc, char** argv) { return plearn::cli::run(argc, argv); }
