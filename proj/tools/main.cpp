#include "carb/cli.hpp"

int main(int argc, char** argv) { return carb::cli_main(argc, argv); }
