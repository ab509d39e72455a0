#include "qbailey/cli.hpp"

int main(int argc, char** argv) { return qbailey::cli::run(argc, argv); }
