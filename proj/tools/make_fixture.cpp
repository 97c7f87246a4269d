// Writes the accident network to the given path (default: stdout).
#include <iostream>

#include "tnbn/fixtures.hpp"
#include "tnbn/model_io.hpp"

int main(int argc, char** argv) {
  const auto spec = tnbn::accident_network();
  if (argc > 1) {
    tnbn::save_model(spec, argv[1]);
  } else {
    std::cout << tnbn::dump_model(spec);
  }
  return 0;
}
