/**
 * @file main.cpp
 * @brief foliation command-line entry point.
 */
#include "cli.hpp"

int main(int argc, char** argv) { return foliation::cli::run(argc, argv); }
