// Writes a seeded synthetic dataset (images, fixation CSVs, manifest.json).
// Usage: make_dataset <dir> <count> <seed> [width height]

#include <cstdlib>
#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 4 && argc != 6) {
    std::cerr << "usage: make_dataset <dir> <count> <seed> [width height]\n";
    return 1;
  }
  vpsal::synth::SyntheticOptions opt;
  if (argc == 6) {
    opt.width = std::strtoul(argv[4], nullptr, 10);
    opt.height = std::strtoul(argv[5], nullptr, 10);
  }
  const auto manifest = vpsal::synth::write_synthetic_dataset(argv[1], std::strtoul(argv[2], nullptr, 10),
                                                              std::strtoull(argv[3], nullptr, 10), opt);
  std::cout << manifest.string() << "\n";
  return 0;
}
