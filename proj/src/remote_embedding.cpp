#include <cmath>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "roomalign/embedding.hpp"
#include "roomalign/errors.hpp"

namespace roomalign {

namespace bai = boost::archive::iterators;

std::string base64_encode(std::string_view bytes) {
  using It = bai::base64_from_binary<bai::transform_width<std::string_view::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string base64_decode(std::string_view text) {
  using It = bai::transform_width<bai::binary_from_base64<std::string_view::const_iterator>, 8, 6>;
  while (!text.empty() && text.back() == '=') text.remove_suffix(1);
  std::string out(It(text.begin()), It(text.end()));
  // Leftover bits of a padded group decode to a spurious trailing byte.
  out.resize(text.size() * 6 / 8);
  return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string base_url,
                                                 std::size_t dimension,
                                                 std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), dimension_(dimension), timeout_(timeout) {
  if (dimension_ == 0) throw ValidationError("remote embedding dimension must be positive");
}

Embedding RemoteEmbeddingProvider::embed_image(const SchematicRaster& raster) const {
  return request("image", base64_encode(to_ppm(raster)));
}

Embedding RemoteEmbeddingProvider::embed_text(std::string_view text) const {
  return request("text", std::string(text));
}

Embedding RemoteEmbeddingProvider::request(std::string_view kind, std::string payload) const {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  const nlohmann::json body = {{"kind", kind}, {"payload", std::move(payload)}};
  const auto res = client.Post("/embed", body.dump(), "application/json");
  if (!res) {
    throw ProviderError(fmt::format("embedding service at {} unreachable: {}", base_url_,
                                    httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw ProviderError(fmt::format("embedding service returned HTTP {}", res->status));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProviderError(fmt::format("embedding service sent malformed JSON: {}", e.what()));
  }
  const auto it = reply.find("vector");
  if (it == reply.end() || !it->is_array()) {
    throw ProviderError("embedding service reply lacks a 'vector' array");
  }
  if (it->size() != dimension_) {
    throw ProviderError(fmt::format("embedding service returned dimension {}, expected {}",
                                    it->size(), dimension_));
  }
  Embedding out;
  out.values.reserve(dimension_);
  double n2 = 0.0;
  for (const auto& x : *it) {
    if (!x.is_number()) throw ProviderError("embedding vector holds a non-number");
    out.values.push_back(x.get<double>());
    n2 += out.values.back() * out.values.back();
  }
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw ProviderError("embedding service returned a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : out.values) x *= inv;
  return out;
}

}  // namespace roomalign
