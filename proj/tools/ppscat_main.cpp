#include "ppscat/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return ppscat::cli::run(argc, argv, std::cout, std::cerr);
}
