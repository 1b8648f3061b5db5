#include "cli.hpp"

int main(int argc, char** argv) { return qsvt::cli::run(argc, argv); }
