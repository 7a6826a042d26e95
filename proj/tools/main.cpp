#include "charp/cli.hpp"

int main(int argc, char** argv) { return charp::run_cli(argc, argv); }
