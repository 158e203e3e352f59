#include "llp/rng.hpp"

namespace llp {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

Rng::result_type Rng::operator()() {
  ++draws_;
  return engine_();
}

std::size_t Rng::uniform_index(std::size_t n) {
  // Multiply-shift: bias is at most n / 2^64.
  const unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * n;
  return static_cast<std::size_t>(product >> 64);
}

bool Rng::coin() { return ((*this)() >> 63) != 0; }

double Rng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::normal() { return normal_(*this); }

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix_seed(seed_ ^ mix_seed(stream + 0x632be59bd9b4e019ULL)));
}

}  // namespace llp
