#include "commands.hpp"

int main(int argc, char** argv) { return costboost::cli::run(argc, argv); }
