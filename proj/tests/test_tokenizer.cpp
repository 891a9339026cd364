#include <set>

#include "doctest.h"
#include "roomalign/config.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/tokenizer.hpp"
#include "support.hpp"

using namespace roomalign;
using namespace testutil;

namespace {

double dist2(const Dimensions& a, const Dimensions& b) {
  return (a.width - b.width) * (a.width - b.width) + (a.depth - b.depth) * (a.depth - b.depth) +
         (a.height - b.height) * (a.height - b.height);
}

DesignBrief brief_for(const RoomSpec& room) {
  DesignBrief b;
  b.room = room;
  return b;
}

}  // namespace

TEST_CASE("vocabulary layout") {
  const TokenVocab vocab;
  const int cats = static_cast<int>(Catalog::builtin().categories().size());
  const int mats = static_cast<int>(Catalog::builtin().materials().size());
  CHECK(vocab.size() == 2 + cats + 32 + 32 + static_cast<int>(kSizeVariants) + mats);
  CHECK(vocab.size() <= 96);
  CHECK(TokenVocab::kMaxSequenceLength == 62);
  std::set<std::string> names;
  for (int t = 0; t < vocab.size(); ++t) {
    names.insert(vocab.name(t));
    const auto [first, count] = vocab.range(vocab.type(t));
    CHECK(t >= first);
    CHECK(t < first + count);
  }
  CHECK(static_cast<int>(names.size()) == vocab.size());
  CHECK(vocab.name(vocab.category_token(category("sofa"))) == "CAT_sofa");
  CHECK_THROWS_AS(vocab.type(vocab.size()), ValidationError);
  CHECK_THROWS_AS(vocab.x_token(32), ValidationError);
}

TEST_CASE("vocabulary hash follows the catalog") {
  const TokenVocab a;
  CHECK(a.hash() == TokenVocab().hash());
  const Catalog other = parse_catalog(R"(
[category:block]
variants = 1x1x1; 1x1x1; 1x1x1
saliency = 1
needs_access = false
[material:red]
base_color = 255, 0, 0
)");
  CHECK(TokenVocab(other).hash() != a.hash());
}

TEST_CASE("encode examples") {
  const TokenVocab vocab;
  Layout layout;
  layout.room = room_with_door(4, 4);
  CHECK(encode(layout, vocab) == std::vector<int>{TokenVocab::kBos, TokenVocab::kEos});
  layout.objects = {box("sofa", 1, 1, 2, 0.9, 0.8), box("chair", 3, 3, 0.5, 0.5, 0.9)};
  const auto tokens = encode(layout, vocab);
  CHECK(tokens.size() == 12);
  // x = 1 m in a 4 m room: bin floor(32/4) = 8.
  CHECK(tokens[2] == vocab.x_token(8));
  CHECK(tokens[7] == vocab.x_token(24));
  layout.objects.assign(13, box("chair", 1, 1, 0.5, 0.5, 0.9));
  CHECK_THROWS_AS(encode(layout, vocab), ValidationError);
}

TEST_CASE("decode examples") {
  const TokenVocab vocab;
  const DesignBrief brief = brief_for(room_with_door(4, 4));
  const std::vector<int> empty{TokenVocab::kBos, TokenVocab::kEos};
  const DecodeResult e = decode(empty, brief, vocab);
  CHECK(e.status == DecodeStatus::empty);
  CHECK(e.layout.objects.empty());

  const int sofa = vocab.category_token(category("sofa"));
  const std::vector<int> one{TokenVocab::kBos, sofa, vocab.x_token(3), vocab.y_token(7),
                             vocab.size_token(1), vocab.material_token(material("oak")),
                             TokenVocab::kEos};
  const DecodeResult d = decode(one, brief, vocab);
  CHECK(d.status == DecodeStatus::ok);
  REQUIRE(d.layout.objects.size() == 1);
  CHECK(d.layout.objects[0].x == doctest::Approx(3.5 * 4.0 / 32));
  CHECK(d.layout.objects[0].y == doctest::Approx(7.5 * 4.0 / 32));
  CHECK(d.layout.objects[0].dims == Catalog::builtin().category(category("sofa")).size_variants[1]);
  CHECK(d.layout.room == brief.room);

  const std::vector<int> cut{TokenVocab::kBos, sofa, vocab.x_token(3), vocab.y_token(7),
                             TokenVocab::kEos};
  const DecodeResult c = decode(cut, brief, vocab);
  CHECK(c.status == DecodeStatus::salvaged);
  CHECK(c.layout.objects.empty());
}

TEST_CASE("decode salvages grammar violations and trailing tokens") {
  const TokenVocab vocab;
  const DesignBrief brief = brief_for(room_with_door(4, 4));
  const int sofa = vocab.category_token(category("sofa"));
  const std::vector<int> block{sofa, vocab.x_token(3), vocab.y_token(7), vocab.size_token(1),
                               vocab.material_token(0)};
  std::vector<int> wrong{TokenVocab::kBos};
  wrong.insert(wrong.end(), block.begin(), block.end());
  wrong.push_back(vocab.x_token(1));  // category expected
  wrong.insert(wrong.end(), block.begin(), block.end());
  wrong.push_back(TokenVocab::kEos);
  const DecodeResult w = decode(wrong, brief, vocab);
  CHECK(w.status == DecodeStatus::salvaged);
  CHECK(w.layout.objects.size() == 1);

  std::vector<int> trailing{TokenVocab::kBos};
  trailing.insert(trailing.end(), block.begin(), block.end());
  trailing.push_back(TokenVocab::kEos);
  trailing.push_back(sofa);
  CHECK(decode(trailing, brief, vocab).status == DecodeStatus::salvaged);

  std::vector<int> unterminated{TokenVocab::kBos};
  unterminated.insert(unterminated.end(), block.begin(), block.end());
  const DecodeResult u = decode(unterminated, brief, vocab);
  CHECK(u.status == DecodeStatus::salvaged);
  CHECK(u.layout.objects.size() == 1);

  CHECK_THROWS_AS(decode(std::vector<int>{sofa}, brief, vocab), ValidationError);
  CHECK_THROWS_AS(decode(std::vector<int>{}, brief, vocab), ValidationError);
  CHECK_THROWS_AS(decode(std::vector<int>{TokenVocab::kBos, 999}, brief, vocab), ValidationError);
}

TEST_CASE("round trip is exact up to quantization") {
  const TokenVocab vocab;
  const Catalog& catalog = Catalog::builtin();
  Rng rng{91};
  for (int trial = 0; trial < 200; ++trial) {
    const double w = rng.uniform(2, 8);
    const double d = rng.uniform(2, 8);
    Layout layout = random_scene(rng, static_cast<int>(rng.below(13)), w, d);
    for (ObjectInstance& o : layout.objects) {
      o.x = rng.uniform(0, w);
      o.y = rng.uniform(0, d);
    }
    const DecodeResult r = decode(encode(layout, vocab), brief_for(layout.room), vocab);
    CHECK(r.status == (layout.objects.empty() ? DecodeStatus::empty : DecodeStatus::ok));
    REQUIRE(r.layout.objects.size() == layout.objects.size());
    for (std::size_t i = 0; i < layout.objects.size(); ++i) {
      const ObjectInstance& a = layout.objects[i];
      const ObjectInstance& b = r.layout.objects[i];
      CHECK(a.category_id == b.category_id);
      CHECK(a.material_id == b.material_id);
      CHECK(std::abs(a.x - b.x) <= w / 64 + 1e-12);
      CHECK(std::abs(a.y - b.y) <= d / 64 + 1e-12);
      for (const Dimensions& v : catalog.category(a.category_id).size_variants) {
        CHECK(dist2(b.dims, a.dims) <= dist2(v, a.dims));
      }
    }
  }
}

TEST_CASE("quantization clamps") {
  CHECK(quantize(-1, 0, 4, 32) == 0);
  CHECK(quantize(4, 0, 4, 32) == 31);
  CHECK(quantize(99, 0, 4, 32) == 31);
  CHECK(dequantize(0, 0, 4, 32) == doctest::Approx(0.0625));
}

TEST_CASE("grammar state") {
  CHECK(grammar_state(TokenType::bos, 0).expected == TokenType::category);
  CHECK(grammar_state(TokenType::bos, 0).allows_eos);
  CHECK_FALSE(grammar_state(TokenType::material, 11).requires_eos);
  CHECK(grammar_state(TokenType::material, 12).requires_eos);
  const TokenType order[] = {TokenType::category, TokenType::x_bin, TokenType::y_bin,
                             TokenType::size, TokenType::material};
  for (int k = 0; k < 4; ++k) {
    const GrammarState s = grammar_state(order[k], 3);
    CHECK(s.expected == order[k + 1]);
    CHECK_FALSE(s.allows_eos);
  }
}
