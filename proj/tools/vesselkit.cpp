#include "vesselkit/cli/commands.hpp"

int main(int argc, char** argv) { return vk::cli::run_cli(argc, argv); }
