#include "mf/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace mf::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Welford running moments; merged with Chan's pairwise update.
struct Accumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Accumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
  }
};

struct CompiledTerm {
  double coefficient;
  std::vector<AtomKind> atoms;
};

double integer_power(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

Accumulator run_chunk(const std::vector<CompiledTerm>& terms, int n, std::uint64_t count, std::uint64_t seed) {
  Engine rng(seed);
  Accumulator acc;
  for (std::uint64_t s = 0; s < count; ++s) {
    double value = 0.0;
    for (const auto& term : terms) {
      double product = term.coefficient;
      for (AtomKind kind : term.atoms) product *= sample_atom(kind, rng);
      value += product;
    }
    acc.add(integer_power(value, n));
  }
  return acc;
}

}  // namespace

std::string generator_description() {
  return "mt19937_64; chunk i of " + std::to_string(kChunkSize) +
         " samples seeded with splitmix64(seed + (i+1)*0x9E3779B97F4A7C15); Welford per chunk, "
         "chunks merged in index order";
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_finalize(seed + (index + 1) * kGolden);
}

double uniform_open(Engine& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(Engine& rng) {
  // Marsaglia polar method; the second variate is discarded to keep the
  // stream consumption simple to reason about.
  while (true) {
    const double u = 2.0 * uniform_open(rng) - 1.0;
    const double v = 2.0 * uniform_open(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double exponential_from_uniform(double u) { return -std::log1p(-u); }

double sample_gamma(double shape, Engine& rng) {
  if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(uniform_open(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x;
    double v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_atom(AtomKind kind, Engine& rng) {
  switch (kind) {
    case AtomKind::Uniform: return uniform_open(rng);
    case AtomKind::ExpGamma: return exponential_from_uniform(uniform_open(rng));
    case AtomKind::Mixture: {
      const double shape = uniform_open(rng);
      return sample_gamma(shape, rng);
    }
  }
  throw std::logic_error("sample_atom: unknown atom kind");
}

bool McResult::within_tolerance() const { return std::abs(z_score) <= kZThreshold; }

McResult mc_moment(const RVExpression& e, int n, std::uint64_t samples, std::uint64_t seed,
                   const MomentEngine& engine, unsigned threads) {
  if (samples < kMinSamples) {
    throw std::invalid_argument("mc_moment: need at least " + std::to_string(kMinSamples) + " samples");
  }
  if (n < 0) throw std::invalid_argument("mc_moment: negative moment order");

  std::vector<CompiledTerm> terms;
  for (const auto& term : e.terms()) {
    CompiledTerm compiled{term.coefficient.to_double(), {}};
    for (const auto& atom : term.atoms) compiled.atoms.push_back(atom.kind);
    terms.push_back(std::move(compiled));
  }

  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<Accumulator> partial(chunks);
  auto chunk_job = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t count = std::min(kChunkSize, samples - begin);
    partial[c] = run_chunk(terms, n, count, stream_seed(seed, c));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) chunk_job(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) chunk_job(c);
      });
    }
    for (auto& t : workers) t.join();
  }

  Accumulator total;
  for (const auto& p : partial) total.merge(p);

  McResult result;
  result.estimate = total.mean;
  result.samples = samples;
  result.seed = seed;
  result.n = n;
  result.expression = e.str();
  result.generator = generator_description();
  result.exact = engine.moment(e, n);
  const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  result.std_error = std::sqrt(std::max(variance, 0.0) / static_cast<double>(total.count));
  const double diff = result.estimate - result.exact.to_double();
  if (result.std_error > 0.0) {
    result.z_score = diff / result.std_error;
  } else {
    result.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return result;
}

const std::vector<PanelEntry>& default_panel() {
  static const std::vector<PanelEntry> panel = {
      {"U1 + U2", 2},             // 7/6
      {"X1 - 1", 3},              // d_3 = 2
      {"M1", 2},                  // 5/6
      {"M1", 1},                  // 1/2
      {"U1", 4},                  // 1/5
      {"U1*X1 + U2*X2", 2},       // degenerate first kind, k = 2
      {"X1 + 2*X2 - 2", 2},       // derangement convolution, k = 2
      {"2*X1 - 1", 2},            // d_2(2) = 5
      {"M1 + M2", 3},             // higher-order Bernoulli
      {"U1 + U2 + U3", 4},        // uniform sum moments
      {"U1 + 1", 3},              // shifted sum
      {"X1 + 2*X2 + 3*X3 - 3", 2},
  };
  return panel;
}

}  // namespace mf::mc
