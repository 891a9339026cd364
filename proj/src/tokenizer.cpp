#include "roomalign/tokenizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

std::string_view to_string(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::ok: return "ok";
    case DecodeStatus::salvaged: return "salvaged";
    case DecodeStatus::empty: return "empty";
  }
  return "?";
}

TokenVocab::TokenVocab(const Catalog& catalog)
    : catalog_(&catalog),
      num_categories_(static_cast<int>(catalog.categories().size())),
      num_materials_(static_cast<int>(catalog.materials().size())) {
  category_base_ = 2;
  x_base_ = category_base_ + num_categories_;
  y_base_ = x_base_ + kPositionBins;
  size_base_ = y_base_ + kPositionBins;
  material_base_ = size_base_ + static_cast<int>(kSizeVariants);
}

namespace {

int checked(int base, int count, int value, std::string_view what) {
  if (value < 0 || value >= count) {
    throw ValidationError(fmt::format("{} {} outside [0, {})", what, value, count));
  }
  return base + value;
}

}  // namespace

int TokenVocab::category_token(int id) const {
  return checked(category_base_, num_categories_, id, "category id");
}
int TokenVocab::x_token(int bin) const { return checked(x_base_, kPositionBins, bin, "x bin"); }
int TokenVocab::y_token(int bin) const { return checked(y_base_, kPositionBins, bin, "y bin"); }
int TokenVocab::size_token(int variant) const {
  return checked(size_base_, static_cast<int>(kSizeVariants), variant, "size variant");
}
int TokenVocab::material_token(int id) const {
  return checked(material_base_, num_materials_, id, "material id");
}

TokenType TokenVocab::type(int token) const {
  if (token < 0 || token >= size()) {
    throw ValidationError(fmt::format("token id {} outside vocabulary of {}", token, size()));
  }
  if (token == kBos) return TokenType::bos;
  if (token == kEos) return TokenType::eos;
  if (token < x_base_) return TokenType::category;
  if (token < y_base_) return TokenType::x_bin;
  if (token < size_base_) return TokenType::y_bin;
  if (token < material_base_) return TokenType::size;
  return TokenType::material;
}

int TokenVocab::value(int token) const {
  switch (type(token)) {
    case TokenType::bos:
    case TokenType::eos: return 0;
    case TokenType::category: return token - category_base_;
    case TokenType::x_bin: return token - x_base_;
    case TokenType::y_bin: return token - y_base_;
    case TokenType::size: return token - size_base_;
    case TokenType::material: return token - material_base_;
  }
  return 0;
}

std::string TokenVocab::name(int token) const {
  const int v = value(token);
  switch (type(token)) {
    case TokenType::bos: return "BOS";
    case TokenType::eos: return "EOS";
    case TokenType::category: return "CAT_" + catalog_->category(v).name;
    case TokenType::x_bin: return fmt::format("X{}", v);
    case TokenType::y_bin: return fmt::format("Y{}", v);
    case TokenType::size: return fmt::format("SIZE{}", v);
    case TokenType::material: return "MAT_" + catalog_->material(v).name;
  }
  return "?";
}

std::pair<int, int> TokenVocab::range(TokenType type) const {
  switch (type) {
    case TokenType::bos: return {kBos, 1};
    case TokenType::eos: return {kEos, 1};
    case TokenType::category: return {category_base_, num_categories_};
    case TokenType::x_bin: return {x_base_, kPositionBins};
    case TokenType::y_bin: return {y_base_, kPositionBins};
    case TokenType::size: return {size_base_, static_cast<int>(kSizeVariants)};
    case TokenType::material: return {material_base_, num_materials_};
  }
  return {0, 0};
}

std::uint64_t TokenVocab::hash() const {
  std::string text = fmt::format("bins={};variants={};", kPositionBins, kSizeVariants);
  for (const ObjectCategory& c : catalog_->categories()) {
    fmt::format_to(std::back_inserter(text), "cat:{}", c.name);
    for (const Dimensions& d : c.size_variants) {
      fmt::format_to(std::back_inserter(text), ":{}x{}x{}", d.width, d.depth, d.height);
    }
    text += ';';
  }
  for (const MaterialSpec& m : catalog_->materials()) {
    fmt::format_to(std::back_inserter(text), "mat:{};", m.name);
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

GrammarState grammar_state(TokenType previous, int objects) {
  GrammarState s;
  switch (previous) {
    case TokenType::bos:
    case TokenType::material:
      s.expected = TokenType::category;
      s.allows_eos = true;
      s.requires_eos = objects >= static_cast<int>(kMaxObjects);
      return s;
    case TokenType::category: s.expected = TokenType::x_bin; break;
    case TokenType::x_bin: s.expected = TokenType::y_bin; break;
    case TokenType::y_bin: s.expected = TokenType::size; break;
    case TokenType::size: s.expected = TokenType::material; break;
    case TokenType::eos: s.expected = TokenType::eos; s.requires_eos = true; return s;
  }
  s.allows_eos = false;
  return s;
}

int quantize(double value, double lo, double hi, int bins) {
  const double t = (value - lo) / (hi - lo) * bins;
  if (!(t > 0.0)) return 0;
  return std::min(bins - 1, static_cast<int>(std::floor(t)));
}

double dequantize(int bin, double lo, double hi, int bins) {
  return lo + (bin + 0.5) * (hi - lo) / bins;
}

int nearest_variant(const ObjectCategory& category, const Dimensions& dims) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v = 0; v < static_cast<int>(kSizeVariants); ++v) {
    const Dimensions& s = category.size_variants[v];
    const double d = std::pow(s.width - dims.width, 2) + std::pow(s.depth - dims.depth, 2) +
                     std::pow(s.height - dims.height, 2);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

std::vector<int> encode(const Layout& layout, const TokenVocab& vocab) {
  if (layout.objects.size() > kMaxObjects) {
    throw ValidationError(fmt::format("layout has {} objects; at most {} can be encoded",
                                      layout.objects.size(), kMaxObjects));
  }
  const Rect box = layout.room.bounds();
  constexpr int bins = TokenVocab::kPositionBins;
  std::vector<int> tokens{TokenVocab::kBos};
  for (const ObjectInstance& o : layout.objects) {
    tokens.push_back(vocab.category_token(o.category_id));
    tokens.push_back(vocab.x_token(quantize(o.x, box.min.x, box.max.x, bins)));
    tokens.push_back(vocab.y_token(quantize(o.y, box.min.y, box.max.y, bins)));
    tokens.push_back(
        vocab.size_token(nearest_variant(vocab.catalog().category(o.category_id), o.dims)));
    tokens.push_back(vocab.material_token(o.material_id));
  }
  tokens.push_back(TokenVocab::kEos);
  return tokens;
}

DecodeResult decode(std::span<const int> tokens, const DesignBrief& brief,
                    const TokenVocab& vocab) {
  if (tokens.empty() || tokens.front() != TokenVocab::kBos) {
    throw ValidationError("token sequence does not start with BOS");
  }
  for (int t : tokens) vocab.type(t);

  DecodeResult out;
  out.layout.room = brief.room;
  const Rect box = brief.room.bounds();
  constexpr int bins = TokenVocab::kPositionBins;
  constexpr int block = TokenVocab::kBlockLength;
  static constexpr TokenType kBlockTypes[block] = {TokenType::category, TokenType::x_bin,
                                                   TokenType::y_bin, TokenType::size,
                                                   TokenType::material};
  std::size_t pos = 1;
  bool clean = false;
  while (pos < tokens.size()) {
    if (tokens[pos] == TokenVocab::kEos) {
      clean = pos + 1 == tokens.size();
      break;
    }
    if (out.layout.objects.size() == kMaxObjects || pos + block > tokens.size()) break;
    bool well_formed = true;
    for (int k = 0; k < block; ++k) {
      if (vocab.type(tokens[pos + k]) != kBlockTypes[k]) {
        well_formed = false;
        break;
      }
    }
    if (!well_formed) break;
    ObjectInstance o;
    o.category_id = vocab.value(tokens[pos]);
    o.x = dequantize(vocab.value(tokens[pos + 1]), box.min.x, box.max.x, bins);
    o.y = dequantize(vocab.value(tokens[pos + 2]), box.min.y, box.max.y, bins);
    o.dims = vocab.catalog().category(o.category_id).size_variants[vocab.value(tokens[pos + 3])];
    o.material_id = vocab.value(tokens[pos + 4]);
    out.layout.objects.push_back(o);
    pos += block;
  }
  if (!clean) {
    out.status = DecodeStatus::salvaged;
  } else if (out.layout.objects.empty()) {
    out.status = DecodeStatus::empty;
  }
  return out;
}

}  // namespace roomalign
