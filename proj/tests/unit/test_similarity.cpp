#include "doctest.h"
#include "test_support.hpp"

#include <wssim/similarity.hpp>

#include <random>

using namespace wssim;

namespace {

ParamNode leaf(std::string name) { return ParamNode{std::move(name), {}}; }

OperationDef op(std::string name, std::vector<std::string> in, std::vector<std::string> out) {
  OperationDef o{std::move(name), ParamNode{"in", {}}, ParamNode{"out", {}}};
  for (auto& n : in) o.input.children.push_back(leaf(n));
  for (auto& n : out) o.output.children.push_back(leaf(n));
  return o;
}

std::vector<OperationDef> corpus_operations() {
  std::vector<OperationDef> ops;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(test::data_dir() / "corpus"))
    if (e.path().extension() == ".wsdl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    for (auto& o : parse_wsdl_file(f).operations) ops.push_back(std::move(o));
  return ops;
}

} // namespace

TEST_CASE("Weights") {
  const Weights w;
  CHECK(w.input == 1.0);
  CHECK(w.output == 1.0);
  CHECK(w.name == 2.0);
  CHECK(Weights::parse("0.5, 1,3").name == 3.0);
  CHECK_THROWS_AS(Weights::parse("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(Weights::parse("a,b,c"), std::invalid_argument);
  CHECK_THROWS_AS((Weights{0, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Weights{-1, 1, 1}.validate()), std::invalid_argument);
}

TEST_CASE("weighted operation score arithmetic") {
  CHECK(combine(Weights{}, OpComponents{0.5, 0.7, 1.0}) == 0.8);
  CHECK(combine(Weights{}, OpComponents{1.0, 1.0, 0.0}) == 0.5);
  CHECK(combine(Weights{0, 0, 1}, OpComponents{0.3, 0.9, 0.25}) == 0.25);
}

TEST_CASE("word_sim examples") {
  WSSIM_REQUIRE_WORDNET(lex);
  Similarity sim(*lex, StopwordList::defaults());
  auto ctx = sim.context_for(TokenList{});
  CHECK(sim.word_sim("temperature", "temperature", ctx) == 1.0);
  CHECK(sim.word_sim("zipc0de", "zipc0de", ctx) == 1.0);
  CHECK(sim.word_sim("car", "automobile", ctx) == 1.0);
  // Out-of-vocabulary words fall back to Jaro-Winkler.
  CHECK(sim.word_sim("zipc0de", "zipcod3", ctx) == jaro_winkler("zipc0de", "zipcod3"));
  // Noun vs verb-only word: no shared ancestor, syntactic fallback.
  CHECK(sim.word_sim("dog", "bark", ctx) > 0.0);
  const double dc = sim.word_sim("dog", "cat", ctx);
  CHECK(dc == sim.word_sim("cat", "dog", ctx));
  const auto dog = lex->lookup("dog", PosFilter::taxonomic())[0];
  const auto cat = lex->lookup("cat", PosFilter::taxonomic())[0];
  CHECK(dc == lex->wu_palmer(*dog, *cat));
}

TEST_CASE("sentence_sim examples") {
  WSSIM_REQUIRE_WORDNET(lex);
  const auto& sw = StopwordList::defaults();
  Similarity sim(*lex, sw);
  auto ctx = sim.context_for(TokenList{"city", "town"});
  const Synset* city = disambiguate(*lex, "city", ctx.context(), PosFilter::taxonomic(), sw);
  const Synset* town = disambiguate(*lex, "town", ctx.context(), PosFilter::taxonomic(), sw);
  REQUIRE(city != nullptr);
  REQUIRE(town != nullptr);
  CHECK(sim.sentence_sim({"city"}, {"town"}, ctx) == lex->wu_palmer(*city, *town));
  CHECK(sim.sentence_sim({"get", "weather"}, {"weather", "get"}, ctx) == 1.0);
  CHECK(sim.sentence_sim({"zip", "code"}, {"zip", "code"}, ctx) == 1.0);
  CHECK_THROWS_AS(sim.sentence_sim({}, {"x"}, ctx), std::invalid_argument);
}

TEST_CASE("set_sim empty-set conventions") {
  WSSIM_REQUIRE_WORDNET(lex);
  Similarity sim(*lex, StopwordList::defaults());
  auto ctx = sim.context_for(TokenList{});
  const FlattenedParamSet empty, one{{{"city"}}};
  CHECK(sim.set_sim(empty, empty, ctx) == 1.0);
  CHECK(sim.set_sim(empty, one, ctx) == 0.0);
  CHECK(sim.set_sim(one, empty, ctx) == 0.0);
  CHECK(sim.set_sim(one, one, ctx) == 1.0);
}

TEST_CASE("op_sim") {
  WSSIM_REQUIRE_WORDNET(lex);
  Similarity sim(*lex, StopwordList::defaults());
  const auto f = op("GetWeather", {"city", "country"}, {"temperature"});
  CHECK(sim.op_sim(f, f) == 1.0);

  const auto a = op("Ping", {}, {});
  const auto b = op("Ping", {}, {});
  const auto pa = sim.prepare(a), pb = sim.prepare(b);
  const auto c = sim.op_components(pa, pb);
  CHECK(c.input == 1.0);
  CHECK(c.output == 1.0);

  const auto g = op("GetForecast", {"zipCode"}, {"forecast", "humidity"});
  const auto comps = sim.op_components(sim.prepare(f), sim.prepare(g));
  CHECK(sim.op_sim(f, g) == combine(Weights{}, comps));
  CHECK(sim.op_sim(f, g) == sim.op_sim(g, f));
}

TEST_CASE("weights (0,0,1) reduce op_sim to the name sentence_sim on 100 random pairs") {
  WSSIM_REQUIRE_WORDNET(lex);
  SimilarityOptions opts;
  opts.weights = Weights{0, 0, 1};
  Similarity sim(*lex, StopwordList::defaults(), opts);
  const auto ops = corpus_operations();
  REQUIRE(ops.size() > 10);
  std::mt19937 rng(100);
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const auto f = sim.prepare(ops[pick(rng)]);
    const auto g = sim.prepare(ops[pick(rng)]);
    auto ctx = sim.context_for(f, g);
    CAPTURE(f.name);
    CAPTURE(g.name);
    CHECK(sim.op_sim(f, g) == sim.sentence_sim(f.name_tokens, g.name_tokens, ctx));
  }
}

TEST_CASE("service_sim") {
  WSSIM_REQUIRE_WORDNET(lex);
  Similarity sim(*lex, StopwordList::defaults());
  const auto weather = op("GetWeather", {"city", "country"}, {"temperature"});
  const auto sms = op("SendMessage", {"phoneNumber", "messageText"}, {"deliveryStatus"});
  const ServiceDescription one{"One", {weather}, ""};
  const ServiceDescription two{"Two", {weather, sms}, ""};
  CHECK(sim.service_sim(one, one) == 1.0);
  CHECK(sim.service_sim(two, two) == 1.0);
  const double sub = sim.service_sim(one, two);
  CHECK(sub < 1.0);
  CHECK(sub == sim.service_sim(two, one));

  const ServiceDescription s1{"A", {weather}, ""}, s2{"B", {sms}, ""};
  CHECK(sim.service_sim(s1, s2) == sim.op_sim(weather, sms));
}

TEST_CASE("stopwords are dropped from names unless nothing would remain") {
  WSSIM_REQUIRE_WORDNET(lex);
  Similarity sim(*lex, StopwordList::defaults());
  CHECK(sim.prepare(op("GetWeatherByCity", {}, {})).name_tokens == TokenList{"get", "weather", "city"});
  CHECK(sim.prepare(op("Is", {}, {})).name_tokens == TokenList{"is"});
}
