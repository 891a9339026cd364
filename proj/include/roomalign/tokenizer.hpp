#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roomalign/scene.hpp"

namespace roomalign {

enum class TokenType { bos, eos, category, x_bin, y_bin, size, material };

enum class DecodeStatus { ok, salvaged, empty };

std::string_view to_string(DecodeStatus status);

/// Dense token ids: BOS, EOS, categories, x bins, y bins, size variants,
/// materials. Holds a reference to the catalog, which must outlive it.
class TokenVocab {
 public:
  static constexpr int kPositionBins = 32;
  static constexpr int kBos = 0;
  static constexpr int kEos = 1;
  static constexpr int kBlockLength = 5;
  /// BOS, twelve object blocks, EOS.
  static constexpr int kMaxSequenceLength = 2 + kBlockLength * static_cast<int>(kMaxObjects);

  explicit TokenVocab(const Catalog& catalog = Catalog::builtin());

  const Catalog& catalog() const { return *catalog_; }
  int size() const { return material_base_ + num_materials_; }
  int num_categories() const { return num_categories_; }
  int num_materials() const { return num_materials_; }

  int category_token(int category_id) const;
  int x_token(int bin) const;
  int y_token(int bin) const;
  int size_token(int variant) const;
  int material_token(int material_id) const;

  /// Throws ValidationError for ids outside the vocabulary.
  TokenType type(int token) const;
  /// Category id, bin, variant or material id carried by the token; 0 for
  /// BOS and EOS.
  int value(int token) const;
  std::string name(int token) const;

  /// First id and count of the tokens of `type`.
  std::pair<int, int> range(TokenType type) const;

  /// Stable digest of the token layout and catalog labels. Checkpoints
  /// record it and refuse to load against a different vocabulary.
  std::uint64_t hash() const;

 private:
  const Catalog* catalog_;
  int num_categories_;
  int num_materials_;
  int category_base_;
  int x_base_;
  int y_base_;
  int size_base_;
  int material_base_;
};

/// Token type that must follow `previous` in a well-formed sequence after
/// `objects` complete blocks. After BOS or a material the next token is a
/// category or EOS; `allows_eos` reports whether EOS is legal there and
/// `requires_eos` whether it is the only legal token.
struct GrammarState {
  TokenType expected = TokenType::category;
  bool allows_eos = true;
  bool requires_eos = false;
};

GrammarState grammar_state(TokenType previous, int objects);

/// Bin of `value` over [lo, hi) split into `bins` equal cells, clamped.
int quantize(double value, double lo, double hi, int bins);
/// Center of `bin`.
double dequantize(int bin, double lo, double hi, int bins);

/// Index of the size variant nearest to `dims` (Euclidean in w, d, h).
int nearest_variant(const ObjectCategory& category, const Dimensions& dims);

/// BOS, one 5-token block per object, EOS. Positions are quantized over
/// the room bounding box. Throws ValidationError above 12 objects.
std::vector<int> encode(const Layout& layout, const TokenVocab& vocab);

struct DecodeResult {
  Layout layout;
  DecodeStatus status = DecodeStatus::ok;
};

/// Parses complete blocks until EOS. Incomplete trailing blocks, grammar
/// violations and trailing tokens after EOS stop parsing with status
/// salvaged. A clean parse without objects is empty. The room comes from
/// the brief. Throws ValidationError on a missing BOS or unknown ids.
DecodeResult decode(std::span<const int> tokens, const DesignBrief& brief,
                    const TokenVocab& vocab);

}  // namespace roomalign
