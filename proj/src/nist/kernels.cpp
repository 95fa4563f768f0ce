#include "rtdrng/nist/kernels.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <memory>
#include <mutex>

#include "rtdrng/errors.hpp"

namespace rtd::nist {

namespace {

// Multiword GF(2) polynomial; bit i of the polynomial is bit (i % 64) of word i / 64.
class Gf2Poly {
 public:
  explicit Gf2Poly(std::size_t bits) : words_((bits + 64) / 64 + 1, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // *this ^= other << shift
  void xor_shifted(const Gf2Poly& other, std::size_t shift) {
    const std::size_t ws = shift >> 6;
    const unsigned bs = shift & 63;
    for (std::size_t k = words_.size(); k-- > ws;) {
      const std::size_t src = k - ws;
      std::uint64_t v = other.words_[src] << bs;
      if (bs != 0 && src > 0) v |= other.words_[src - 1] >> (64 - bs);
      words_[k] ^= v;
    }
  }

  // parity of popcount(*this & other)
  bool dot(const Gf2Poly& other) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return (std::popcount(acc) & 1) != 0;
  }

  // Shift left by one and put `bit` in position 0.
  void push(bool bit) {
    for (std::size_t k = words_.size(); k-- > 1;) words_[k] = (words_[k] << 1) | (words_[k - 1] >> 63);
    words_[0] = (words_[0] << 1) | (bit ? 1U : 0U);
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

std::size_t berlekamp_massey(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  Gf2Poly c(n), b(n), window(n);
  c.set(0);
  b.set(0);
  std::size_t l = 0;
  std::size_t m = 0;  // index of the last length change, minus one
  bool have_m = false;
  for (std::size_t i = 0; i < n; ++i) {
    // window bit k holds s[i - k], so c . window = sum_k c_k s[i - k]
    window.push(bits[i] != 0);
    if (!c.dot(window)) continue;
    const std::size_t shift = have_m ? i - m : i + 1;
    if (2 * l <= i) {
      Gf2Poly t = c;
      c.xor_shifted(b, shift);
      l = i + 1 - l;
      b = t;
      m = i;
      have_m = true;
    } else {
      c.xor_shifted(b, shift);
    }
  }
  return l;
}

int gf2_rank(BitMatrix32 rows) {
  int rank = 0;
  for (int col = 31; col >= 0 && rank < 32; --col) {
    const std::uint32_t mask = std::uint32_t{1} << col;
    int pivot = -1;
    for (int r = rank; r < 32; ++r) {
      if (rows[static_cast<std::size_t>(r)] & mask) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < 32; ++r) {
      if (r != rank && (rows[static_cast<std::size_t>(r)] & mask)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint32_t> aperiodic_templates(unsigned m) {
  if (m < 2 || m > 21) throw DomainError("aperiodic_templates: m must lie in [2, 21]");
  std::vector<std::uint32_t> out;
  const std::uint32_t count = std::uint32_t{1} << m;
  for (std::uint32_t t = 0; t < count; ++t) {
    bool aperiodic = true;
    // A border of length k: the top k bits equal the bottom k bits.
    for (unsigned k = 1; k < m && aperiodic; ++k) {
      const std::uint32_t low = t & ((std::uint32_t{1} << k) - 1);
      if ((t >> (m - k)) == low) aperiodic = false;
    }
    if (aperiodic) out.push_back(t);
  }
  return out;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<double> spectral_moduli(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 2) throw DomainError("spectral_moduli: need at least 2 bits");
  std::unique_ptr<double, FftwDeleter> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = bits[i] ? 1.0 : -1.0;
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<double> moduli(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) moduli[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
  return moduli;
}

}  // namespace rtd::nist
