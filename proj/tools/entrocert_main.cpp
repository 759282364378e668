#include "entrocert/commands.hpp"

int main(int argc, char** argv) { return entrocert::run_cli(argc, argv); }
