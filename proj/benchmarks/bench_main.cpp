#include <wssim/hausdorff.hpp>
#include <wssim/lexicon.hpp>
#include <wssim/similarity.hpp>
#include <wssim/text.hpp>
#include <wssim/wsdl_model.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

using namespace wssim;

namespace {

std::vector<std::string> random_words(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len(3, 12), ch(0, 25);
  std::vector<std::string> out(n);
  for (auto& w : out) {
    w.resize(len(rng));
    for (auto& c : w) c = static_cast<char>('a' + ch(rng));
  }
  return out;
}

const Lexicon* wordnet() {
  static const std::unique_ptr<Lexicon> lex = []() -> std::unique_ptr<Lexicon> {
    const char* dir = std::getenv("WSSIM_WORDNET_DIR");
    if (dir == nullptr || *dir == '\0') return nullptr;
    try {
      return std::make_unique<Lexicon>(Lexicon::load(dir));
    } catch (const std::exception&) {
      return nullptr;
    }
  }();
  return lex.get();
}

std::vector<ServiceDescription> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(WSSIM_BENCH_CORPUS))
    if (e.path().extension() == ".wsdl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ServiceDescription> out;
  for (const auto& f : files) out.push_back(parse_wsdl_file(f));
  return out;
}

void BM_JaroWinkler(benchmark::State& state) {
  const auto a = random_words(256, 1), b = random_words(256, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jaro_winkler(a[i & 255], b[(i * 7) & 255]));
    ++i;
  }
}
BENCHMARK(BM_JaroWinkler);

void BM_SetSimilarity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (auto& r : m)
    for (auto& v : r) v = u(rng);
  std::vector<std::size_t> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i, b[i] = i;
  auto sim = [&](std::size_t x, std::size_t y) { return m[x][y]; };
  for (auto _ : state) benchmark::DoNotOptimize(set_similarity<std::size_t>(a, b, sim));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_SetSimilarity)->RangeMultiplier(4)->Range(4, 256)->Complexity(benchmark::oNSquared);

void BM_ServiceSim(benchmark::State& state) {
  const Lexicon* lex = wordnet();
  if (lex == nullptr) {
    state.SkipWithError("WSSIM_WORDNET_DIR not set");
    return;
  }
  const auto services = corpus();
  const auto& a = services.at(static_cast<std::size_t>(state.range(0)));
  const auto& b = services.at(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Similarity sim(*lex, StopwordList::defaults());
    benchmark::DoNotOptimize(sim.service_sim(a, b));
  }
}
BENCHMARK(BM_ServiceSim)->Args({0, 1})->Args({0, 8})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
