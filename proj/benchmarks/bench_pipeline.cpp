// Microbenchmarks for the hot paths: document load, full pipeline,
// string/geometry metrics, watermark scanning, text normalization.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "pdfvex/embed.hpp"
#include "pdfvex/filter.hpp"
#include "pdfvex/fixtures/corpus.hpp"
#include "pdfvex/merge.hpp"
#include "pdfvex/metrics.hpp"
#include "pdfvex/pdf/backend.hpp"
#include "pdfvex/pipeline.hpp"
#include "pdfvex/textnorm.hpp"

namespace {

const pdfvex::fixtures::Corpus& corpus() {
  static const pdfvex::fixtures::Corpus c = pdfvex::fixtures::build_corpus(0);
  return c;
}

const std::string& doc_pdf(const std::string& name) {
  for (const auto& doc : corpus().docs)
    if (doc.name == name) return doc.pdf;
  throw std::runtime_error("no fixture named " + name);
}

void BM_LoadDocument(benchmark::State& state) {
  const std::string& pdf = doc_pdf("mixed_page");
  for (auto _ : state) {
    auto pages = pdfvex::load_document(pdf);
    benchmark::DoNotOptimize(pages);
  }
}
BENCHMARK(BM_LoadDocument);

void BM_RunPipeline(benchmark::State& state) {
  const std::string& pdf = doc_pdf("mixed_page");
  const std::span<const std::uint8_t> bytes(
      reinterpret_cast<const std::uint8_t*>(pdf.data()), pdf.size());
  pdfvex::PipelineConfig cfg;
  cfg.jobs = 1;
  pdfvex::OwnedProviders owned = pdfvex::make_providers(cfg);
  const pdfvex::PipelineProviders providers = owned.view();
  for (auto _ : state) {
    auto manifest = pdfvex::run_pipeline(bytes, cfg, providers);
    benchmark::DoNotOptimize(manifest);
  }
}
BENCHMARK(BM_RunPipeline);

void BM_LevenshteinSimilarity(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ch('a', 'z');
  std::string a(len, ' '), b(len, ' ');
  for (auto& c : a) c = static_cast<char>(ch(rng));
  for (auto& c : b) c = static_cast<char>(ch(rng));
  for (auto _ : state)
    benchmark::DoNotOptimize(pdfvex::levenshtein_similarity(a, b));
}
BENCHMARK(BM_LevenshteinSimilarity)->Arg(64)->Arg(512)->Arg(4096);

void BM_MergeImages(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(0, 500), size(10, 120);
  std::vector<pdfvex::ImageRegion> regions(n);
  for (auto& r : regions) {
    const double x = pos(rng), y = pos(rng);
    r.bbox = {x, y, x + size(rng), y + size(rng)};
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(pdfvex::merge_images(regions));
}
BENCHMARK(BM_MergeImages)->Arg(8)->Arg(64)->Arg(256);

void BM_WatermarkScan(benchmark::State& state) {
  // Semi-transparent keyword overlay, the most expensive filter tier:
  // threshold, connected components, glyph decode.
  auto pages = pdfvex::load_document(doc_pdf("watermark_tiled"));
  pdfvex::ImageRegion overlay = pages.at(0)->images.at(0);
  pdfvex::StubOcrProvider ocr;
  const pdfvex::FilterParams params;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        pdfvex::detect_watermark(overlay, &ocr, params));
}
BENCHMARK(BM_WatermarkScan);

void BM_EmbedImage(benchmark::State& state) {
  auto pages = pdfvex::load_document(doc_pdf("mixed_page"));
  const pdfvex::RasterImage& raster = *pages.at(0)->images.at(0).pixels;
  pdfvex::StubEmbeddingProvider provider;
  for (auto _ : state)
    benchmark::DoNotOptimize(provider.embed_image(raster));
}
BENCHMARK(BM_EmbedImage);

void BM_NormalizeText(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 200; ++i)
    text +=
        "The ef\xEF\xAC\x81"
        "cient work\xEF\xAC\x82ow over-\nlaps the previous run.  \n";
  for (auto _ : state)
    benchmark::DoNotOptimize(pdfvex::normalize_text(text));
}
BENCHMARK(BM_NormalizeText);

}  // namespace

BENCHMARK_MAIN();
