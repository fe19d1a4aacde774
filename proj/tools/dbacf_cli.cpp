#include "dbacf/cli.hpp"

int main(int argc, char** argv) { return dbacf::cli::run(argc, argv); }
