#include "cli/commands.hpp"

int main(int argc, char** argv) { return racetrack::cli::run(argc, argv); }
