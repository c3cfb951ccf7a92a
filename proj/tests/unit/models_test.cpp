#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include "cds/core/rng.hpp"
#include "cds/models/bridge.hpp"
#include "cds/models/fewshot.hpp"
#include "cds/models/model_io.hpp"
#include "cds/models/ngram_model.hpp"
#include "cds/models/remote_model.hpp"
#include "cds/models/table_model.hpp"
#include "cds/models/wire.hpp"
#include "fixtures.hpp"
#include "loopback_server.hpp"

using namespace cds;

namespace {

Vocabulary abcde() { return Vocabulary::from_strings({"</s>", "a", "b", "c", "d"}, {"</s>"}); }

TokenSequence encode(const Vocabulary& v, std::string_view text) { return WhitespaceTokenizer(v).encode(text); }

void check_close(const TokenDistribution& a, const TokenDistribution& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("table model falls back when empty") {
  const auto v = abcde();
  const auto fallback = TokenDistribution::uniform(v.size());
  TableModel m(v, fallback);
  CHECK(m.next_distribution(TokenSequence{1, 2}) == fallback);
  CHECK(m.next_distribution(TokenSequence{}) == fallback);
  CHECK_THROWS_AS(m.next_distribution(TokenSequence{9}), std::invalid_argument);
}

TEST_CASE("table model prefers the longest stored suffix") {
  const auto v = abcde();
  TableModel m(v, TokenDistribution::uniform(v.size()));
  m.set({2}, TokenDistribution::one_hot(v.size(), 3));
  m.set({1, 2}, TokenDistribution::one_hot(v.size(), 4));
  CHECK(argmax(m.next_distribution(TokenSequence{1, 2})) == 4);
  CHECK(argmax(m.next_distribution(TokenSequence{3, 2})) == 3);
}

TEST_CASE("pinned three-entry table matches a lookup oracle on every context") {
  const auto v = abcde();
  const TokenDistribution fallback = TokenDistribution::uniform(5);
  const TokenDistribution da({0.0, 0.1, 0.2, 0.3, 0.4});
  const TokenDistribution dab({0.5, 0.5, 0.0, 0.0, 0.0});
  const TokenDistribution dc({0.2, 0.2, 0.2, 0.2, 0.2});
  TableModel m(v, fallback);
  m.set({1}, da);
  m.set({1, 2}, dab);
  m.set({3}, dc);
  // Hand-written oracle: last two tokens (a, b) -> dab; last token a -> da;
  // last token c -> dc; anything else -> fallback.
  auto oracle = [&](const TokenSequence& ctx) -> const TokenDistribution& {
    const std::size_t n = ctx.size();
    if (n >= 2 && ctx[n - 2] == 1 && ctx[n - 1] == 2) return dab;
    if (n >= 1 && ctx[n - 1] == 1) return da;
    if (n >= 1 && ctx[n - 1] == 3) return dc;
    return fallback;
  };
  std::size_t checked = 0;
  for (TokenId x = 0; x < 5; ++x) {
    CHECK(m.next_distribution(TokenSequence{x}) == oracle({x}));
    for (TokenId y = 0; y < 5; ++y) {
      for (TokenId z = 0; z < 5; ++z) {
        const TokenSequence ctx = {x, y, z};
        CHECK(m.next_distribution(ctx) == oracle(ctx));
        ++checked;
      }
    }
  }
  CHECK(checked == 125);
}

TEST_CASE("n-gram training") {
  const auto v = abcde();
  const TokenSequence abab = encode(v, "a b a b");
  auto m = ngram_train(std::span(&abab, 1), v, 2, 0.0);
  CHECK(m.next_distribution(encode(v, "a"))[v.id("b")] == 1.0);

  const std::vector<TokenSequence> two = {encode(v, "a b"), encode(v, "a c")};
  auto m2 = ngram_train(two, v, 2, 0.0);
  const auto d = m2.next_distribution(encode(v, "a"));
  CHECK(d[v.id("b")] == 0.5);
  CHECK(d[v.id("c")] == 0.5);

  CHECK_THROWS_AS(ngram_train(std::span<const TokenSequence>(), v, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ngram_train(two, v, 0, 0.0), std::invalid_argument);
}

TEST_CASE("trigram model equals brute-force counting on a pinned corpus") {
  const auto v = abcde();
  std::vector<TokenSequence> corpus;
  Rng rng(2024);
  for (int s = 0; s < 20; ++s) {
    TokenSequence seq;
    const std::size_t len = 2 + rng.index(6);
    for (std::size_t i = 0; i < len; ++i) seq.push_back(static_cast<TokenId>(1 + rng.index(4)));
    seq.push_back(0);
    corpus.push_back(seq);
  }
  const double alpha = 0.1;
  const auto model = ngram_train(corpus, v, 3, alpha);

  const TokenId bos = NGramModel::kBeginOfSequence;
  std::map<std::pair<TokenId, TokenId>, std::map<TokenId, double>> counts;
  for (const auto& seq : corpus) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const TokenId p2 = i >= 2 ? seq[i - 2] : bos;
      const TokenId p1 = i >= 1 ? seq[i - 1] : bos;
      counts[{p2, p1}][seq[i]] += 1.0;
    }
  }
  for (const auto& [ctx, row] : counts) {
    double total = 0.0;
    for (const auto& [w, c] : row) total += c;
    TokenSequence context;
    if (ctx.first != bos) context.push_back(ctx.first);
    if (ctx.second != bos) context.push_back(ctx.second);
    const auto d = model.next_distribution(context);
    for (TokenId w = 0; w < v.size(); ++w) {
      const double c = row.count(w) ? row.at(w) : 0.0;
      CHECK(d[w] == doctest::Approx((c + alpha) / (total + alpha * 5)).epsilon(1e-12));
    }
  }
}

TEST_CASE("n-gram with a deterministic corpus is one-hot") {
  const auto v = abcde();
  const std::vector<TokenSequence> corpus = {encode(v, "a b c d </s>")};
  const auto m = ngram_train(corpus, v, 2, 0.0);
  for (const char* ctx : {"a", "b", "c", "d"}) {
    const auto d = m.next_distribution(encode(v, ctx));
    CHECK(d[argmax(d)] == 1.0);
  }
}

TEST_CASE("few-shot rendering") {
  const auto v = Vocabulary::from_strings(
      {"</s>", "Question:", "Answer:", "Q?", "Q1", "A1", "Q2", "A2", "Q3", "A3", "Q4", "A4", "Q5", "A5"}, {"</s>"});
  const WhitespaceTokenizer tok(v);
  FewShotSpec spec;
  CHECK(render_fewshot_prefix(spec, "Q?", tok) == encode(v, "Question: Q? Answer:"));

  for (int i = 1; i <= 5; ++i) {
    spec.shots.push_back({"Q" + std::to_string(i), "A" + std::to_string(i)});
  }
  const auto five = render_fewshot_prefix(spec, "Q?", tok);
  CHECK(std::count(five.begin(), five.end(), v.id("Question:")) == 6);

  // Golden rendering of the first two shots.
  CHECK(render_fewshot_text(spec.first(2), "Q?") == "Question: Q1\nAnswer: A1\n\nQuestion: Q2\nAnswer: A2\n\nQuestion: Q?\nAnswer:");
  CHECK(render_fewshot_prefix(spec.first(2), "Q?", tok) ==
        TokenSequence{1, 4, 2, 5, 1, 6, 2, 7, 1, 3, 2});

  for (std::size_t k = 1; k <= 5; ++k) {
    const auto prev = render_fewshot_prefix(spec.first(k - 1), "Q?", tok);
    const auto cur = render_fewshot_prefix(spec.first(k), "Q?", tok);
    CHECK(cur.size() == prev.size() + 4);
    CHECK(std::equal(prev.begin(), prev.end() - 3, cur.begin()));
  }

  spec.shots.push_back({"Q?", "A1"});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("tokenizer round trip") {
  const auto v = Vocabulary::from_strings({"</s>", "<unk>", "a", "b"}, {"</s>"}, "<unk>");
  const WhitespaceTokenizer tok(v);
  CHECK(tok.encode("a  b zz") == TokenSequence{2, 3, 1});
  CHECK(tok.decode(TokenSequence{2, 3, 0}) == "a b");
  CHECK(tok.decode(TokenSequence{2, 0}, true) == "a </s>");
  const auto strict = abcde();
  CHECK_THROWS_AS(WhitespaceTokenizer(strict).encode("zz"), std::invalid_argument);
}

TEST_CASE("wire distribution round trip") {
  const auto v = abcde();
  const TokenDistribution d({0.1, 0.0, 0.6, 0.2, 0.1});
  const auto body = wire::encode_distribution(d, v, 128);
  CHECK(body["entries"].size() == 4);
  check_close(wire::decode_distribution(body, v), d, 1e-12);

  const auto top2 = wire::encode_distribution(d, v, 2);
  CHECK(top2["entries"].size() == 2);
  const auto rebuilt = wire::decode_distribution(top2, v);
  CHECK(argmax(rebuilt) == 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < rebuilt.size(); ++i) sum += rebuilt[i];
  CHECK(std::abs(sum - 1.0) <= 1e-9);
  // Residual 0.2 is spread over the three unlisted entries.
  CHECK(rebuilt[0] == doctest::Approx(0.2 / 3.0).epsilon(1e-9));

  auto bad = body;
  bad["entries"].push_back({{"token", "zzz"}, {"logprob", -1.0}});
  CHECK_THROWS_AS(wire::decode_distribution(bad, v), wire::ProtocolError);
  CHECK_THROWS_AS(wire::decode_distribution(nlohmann::json{{"entries", 3}}, v), wire::ProtocolError);
  CHECK(wire::decode_vocabulary(wire::encode_vocabulary(v)) == v);
}

TEST_CASE("vocabulary bridge") {
  const auto a = Vocabulary::from_strings({"</s>", "x", "y"}, {"</s>"});
  const auto b = Vocabulary::from_strings({"y", "<eos>", "x"}, {"<eos>"});
  const VocabularyBridge ab(a, b);
  CHECK_FALSE(ab.identity());
  CHECK(ab.translate(1) == 2);
  CHECK(ab.translate(0) == 1);
  const auto c = Vocabulary::from_strings({"</s>", "x"}, {"</s>"});
  CHECK_THROWS_AS(VocabularyBridge(a, c).translate(2), BridgeError);
  CHECK(VocabularyBridge(a, a).identity());
}

TEST_CASE("model files round trip") {
  const auto fx = fixtures::make_fact_fixture();
  const auto dir = std::filesystem::temp_directory_path() / "cds_models_test";
  std::filesystem::create_directories(dir);
  save_json(dir / "table.json", to_json(*fx.aligned));
  const auto loaded = load_model(dir / "table.json");
  CHECK(loaded->vocabulary() == fx.aligned->vocabulary());
  for (const auto& [suffix, dist] : fx.aligned->entries()) check_close(loaded->next_distribution(suffix), dist, 1e-15);

  const auto v = abcde();
  const std::vector<TokenSequence> corpus = {encode(v, "a b c </s>"), encode(v, "a c c b </s>")};
  const auto ngram = ngram_train(corpus, v, 3, 0.5);
  save_json(dir / "ngram.json", to_json(ngram));
  const auto back = load_model(dir / "ngram.json");
  for (const char* ctx : {"a", "a b", "c c", "b"}) {
    CHECK(back->next_distribution(encode(v, ctx)) == ngram.next_distribution(encode(v, ctx)));
  }
  CHECK_THROWS_AS(model_from_json(nlohmann::json{{"format", "cds-model/9"}}), std::invalid_argument);
  CHECK_THROWS_AS(load_model(dir / "absent.json"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("remote model over loopback") {
  const auto v = abcde();
  auto one_hot = std::make_shared<TableModel>(v, TokenDistribution::one_hot(5, 3));
  fixtures::LoopbackServer server(one_hot);
  const RemoteModel remote(Endpoint{"127.0.0.1", server.port()});
  CHECK(remote.vocabulary() == v);
  CHECK(remote.next_distribution(TokenSequence{1}) == TokenDistribution::one_hot(5, 3));
  CHECK_THROWS_AS(remote.next_distribution(TokenSequence{}), std::invalid_argument);

  const auto other = Vocabulary::from_strings({"</s>", "q"}, {"</s>"});
  CHECK_THROWS_AS(RemoteModel(Endpoint{"127.0.0.1", server.port()}, other), wire::ProtocolError);

  server.corrupt_distributions(true);
  CHECK_THROWS_AS(remote.next_distribution(TokenSequence{1}), wire::ProtocolError);
}

TEST_CASE("remote and local table models agree") {
  const auto fx = fixtures::make_fact_fixture();
  fixtures::LoopbackServer server(fx.aligned);
  const RemoteModel remote(Endpoint::parse("http://127.0.0.1:" + std::to_string(server.port())));
  const auto& v = fx.aligned->vocabulary();
  std::size_t checked = 0;
  for (const auto& [suffix, dist] : fx.aligned->entries()) {
    TokenSequence ctx = {v.id("Question:")};
    ctx.insert(ctx.end(), suffix.begin(), suffix.end());
    check_close(remote.next_distribution(ctx), fx.aligned->next_distribution(ctx), 1e-6);
    ++checked;
  }
  CHECK(checked == fx.aligned->entries().size());
}

TEST_CASE("remote retries transient failures and reports unreachable endpoints") {
  const auto v = abcde();
  auto model = std::make_shared<TableModel>(v, TokenDistribution::uniform(5));
  fixtures::LoopbackServer server(model);
  RemoteOptions opts;
  opts.retries = 2;
  opts.retry_backoff = std::chrono::milliseconds(1);
  server.fail_next(2);
  const RemoteModel remote(Endpoint{"127.0.0.1", server.port()}, opts);
  CHECK(remote.vocabulary() == v);

  server.fail_next(3);
  try {
    remote.next_distribution(TokenSequence{1});
    FAIL("expected a transport error");
  } catch (const TransportError& e) {
    CHECK(e.attempts() == 3);
  }

  int closed_port = 0;
  {
    fixtures::LoopbackServer gone(model);
    closed_port = gone.port();
  }
  opts.timeout = std::chrono::milliseconds(200);
  try {
    RemoteModel unreachable(Endpoint{"127.0.0.1", closed_port}, opts);
    FAIL("expected a transport error");
  } catch (const TransportError& e) {
    CHECK(e.attempts() == 3);
  }
}

TEST_CASE("endpoint parsing") {
  CHECK(Endpoint::parse("localhost:8080").port == 8080);
  CHECK(Endpoint::parse("http://10.0.0.1:9").host == "10.0.0.1");
  CHECK_THROWS_AS(Endpoint::parse("nohost"), std::invalid_argument);
}
