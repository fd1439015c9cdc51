#include "commands.hpp"

int main(int argc, char** argv) { return gapphaz::cli::run(argc, argv); }
