// Remote embedding/OCR clients. Kept in one translation unit so the HTTP
// stack stays out of every other build path.
#include <memory>
#include <semaphore>
#include <string>

#include "httplib.h"
#include "json.hpp"

#include "pdfvex/embed.hpp"
#include "png.hpp"

namespace pdfvex {

namespace {

using nlohmann::json;

std::string base64_encode(const std::string& in) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= in.size(); i += 3) {
    const std::uint32_t v = (static_cast<unsigned char>(in[i]) << 16) |
                            (static_cast<unsigned char>(in[i + 1]) << 8) |
                            static_cast<unsigned char>(in[i + 2]);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back(alphabet[v & 63]);
  }
  const std::size_t rest = in.size() - i;
  if (rest == 1) {
    const std::uint32_t v = static_cast<unsigned char>(in[i]) << 16;
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t v = (static_cast<unsigned char>(in[i]) << 16) |
                            (static_cast<unsigned char>(in[i + 1]) << 8);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

/// Bounds concurrent requests and owns one client per call (httplib clients
/// are not thread-safe for concurrent use).
class RemoteBase {
 public:
  RemoteBase(std::string base_url, int timeout_ms, int max_inflight)
      : base_url_(std::move(base_url)),
        timeout_ms_(timeout_ms),
        slots_(std::max(1, std::min(max_inflight, 256))) {}

  json post_json(const char* path, const json& body, const char* err_what) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<256>& s;
      ~Release() { s.release(); }
    } release{slots_};

    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_ms_ / 1000, timeout_ms_ % 1000 * 1000);
    client.set_read_timeout(timeout_ms_ / 1000, timeout_ms_ % 1000 * 1000);
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res)
      throw std::runtime_error(std::string(err_what) + ": no response from " +
                               base_url_ + path);
    if (res->status != 200)
      throw std::runtime_error(std::string(err_what) + ": HTTP " +
                               std::to_string(res->status));
    return json::parse(res->body, nullptr, false);
  }

 private:
  std::string base_url_;
  int timeout_ms_;
  std::counting_semaphore<256> slots_;
};

class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  RemoteEmbeddingProvider(std::string base_url, int timeout_ms, int max_inflight)
      : base_(std::move(base_url), timeout_ms, max_inflight) {}

  EmbeddingVector embed_text(const std::string& text) override {
    return request(json{{"kind", "text"}, {"payload", text}});
  }

  EmbeddingVector embed_image(const RasterImage& raster) override {
    if (!raster.valid())
      throw UndecodableImage("remote embedding: raster has no pixels");
    return request(json{{"kind", "image"},
                        {"payload", base64_encode(png::encode(raster))}});
  }

 private:
  EmbeddingVector request(const json& body) {
    json reply;
    try {
      reply = base_.post_json("/embed", body, "embedding service");
    } catch (const std::exception& e) {
      throw EmbeddingUnavailable(e.what());
    }
    if (!reply.is_object() || !reply.contains("vector") ||
        !reply["vector"].is_array())
      throw EmbeddingUnavailable("embedding service: malformed reply");
    EmbeddingVector v;
    v.values.reserve(reply["vector"].size());
    for (const auto& x : reply["vector"]) {
      if (!x.is_number()) throw EmbeddingUnavailable("embedding service: non-numeric vector");
      v.values.push_back(x.get<float>());
    }
    return v;
  }

  RemoteBase base_;
};

class RemoteOcrProvider : public OcrProvider {
 public:
  RemoteOcrProvider(std::string base_url, int timeout_ms, int max_inflight)
      : base_(std::move(base_url), timeout_ms, max_inflight) {}

  std::string ocr_text(const RasterImage& raster) override {
    if (!raster.valid()) throw OcrUnavailable("remote ocr: raster has no pixels");
    json reply;
    try {
      reply = base_.post_json(
          "/ocr", json{{"payload", base64_encode(png::encode(raster))}},
          "ocr service");
    } catch (const std::exception& e) {
      throw OcrUnavailable(e.what());
    }
    if (!reply.is_object() || !reply.contains("text") ||
        !reply["text"].is_string())
      throw OcrUnavailable("ocr service: malformed reply");
    return reply["text"].get<std::string>();
  }

 private:
  RemoteBase base_;
};

}  // namespace

std::unique_ptr<EmbeddingProvider> make_remote_embedding_provider(
    const std::string& base_url, int timeout_ms, int max_inflight) {
  return std::make_unique<RemoteEmbeddingProvider>(base_url, timeout_ms,
                                                   max_inflight);
}

std::unique_ptr<OcrProvider> make_remote_ocr_provider(
    const std::string& base_url, int timeout_ms, int max_inflight) {
  return std::make_unique<RemoteOcrProvider>(base_url, timeout_ms,
                                             max_inflight);
}

}  // namespace pdfvex
