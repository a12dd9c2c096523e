#include "runner.hpp"

int main(int argc, char** argv) { return nullwave::cli::run(argc, argv); }
