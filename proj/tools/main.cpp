#include <iostream>
#include <string>
#include <vector>

#include "tinpc/cli.hpp"

int main(int argc, char** argv) {
  return tinpc::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
