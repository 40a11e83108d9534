// Whole-pipeline contracts: config serialization and validation, manifest
// round trips, deterministic output, and the evaluation/raster export
// adapters.
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pdfvex/fixtures/corpus.hpp"
#include "pdfvex/pipeline.hpp"

using namespace pdfvex;
namespace fs = std::filesystem;

namespace {

const fixtures::Corpus& corpus() {
  static const fixtures::Corpus c = fixtures::build_corpus(0);
  return c;
}

const fixtures::CorpusDoc& doc(const std::string& name) {
  for (const auto& d : corpus().docs)
    if (d.name == name) return d;
  REQUIRE_MESSAGE(false, "no corpus document named " << name);
  std::abort();
}

DocumentManifest run_doc(const fixtures::CorpusDoc& d,
                         PipelineConfig cfg = {}) {
  OwnedProviders owned = make_providers(cfg);
  return run_pipeline(
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(d.pdf.data()), d.pdf.size()),
      cfg, owned.view());
}

/// Unique scratch path under the system temp dir; removed by the caller.
fs::path scratch(const std::string& leaf) {
  return fs::temp_directory_path() / ("pdfvex_test_" + leaf);
}

}  // namespace

TEST_CASE("config defaults validate and survive a JSON round trip") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  const std::string first = cfg.to_json();
  const PipelineConfig back = PipelineConfig::from_json(first);
  CHECK(back.to_json() == first);
  CHECK(first.back() == '\n');
}

TEST_CASE("config accepts partial documents and keeps defaults elsewhere") {
  const auto cfg = PipelineConfig::from_json(
      R"({"jobs": 3, "filter": {"frequency_page_pct": 70}})");
  CHECK(cfg.jobs == 3);
  CHECK(cfg.filter.frequency_page_pct == 70);
  // Untouched sections keep their defaults.
  CHECK(cfg.tables.min_lines == PipelineConfig{}.tables.min_lines);
  CHECK(cfg.match_iou == 0.8);
  CHECK(cfg.provider == "stub");
}

TEST_CASE("config rejects unknown keys at any level") {
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"colour": "blue"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"filter": {"sizes": 3}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"tables": {"lines": 1}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json("[1,2]"), std::invalid_argument);
}

TEST_CASE("config range checks reject out-of-band values") {
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"match_iou": 0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"provider": "psychic"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PipelineConfig::from_json(R"({"merge": {"overlap_threshold": 1.0}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PipelineConfig::from_json(R"({"caption": {"fusion_alpha": 1.5}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PipelineConfig::from_json(R"({"filter": {"frequency_page_pct": 0}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"provider_max_inflight": 0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json(R"({"jobs": -1})"),
                  std::invalid_argument);
}

TEST_CASE("config files round trip through disk") {
  PipelineConfig cfg;
  cfg.jobs = 2;
  cfg.caption.fusion_alpha = 0.6;
  const fs::path path = scratch("config.json");
  cfg.save(path.string());
  const PipelineConfig back = PipelineConfig::load(path.string());
  CHECK(back.to_json() == cfg.to_json());
  fs::remove(path);
  CHECK_THROWS_AS(PipelineConfig::load(path.string()), std::runtime_error);
}

TEST_CASE("pipeline assigns unique structured element ids") {
  const DocumentManifest m = run_doc(doc("mixed_page"));
  REQUIRE_FALSE(m.elements.empty());
  const std::regex shape("^p[0-9]+_(img|tbl|frm)[0-9]+$");
  std::set<std::string> ids;
  for (const VisualElement& el : m.elements) {
    CHECK(std::regex_match(el.id, shape));
    CHECK(ids.insert(el.id).second);  // no duplicates
  }
}

TEST_CASE("manifest JSON round trips losslessly") {
  const DocumentManifest m = run_doc(doc("bordered_grid"));
  const std::string first = manifest_to_json(m);
  const DocumentManifest back = manifest_from_json(first);
  CHECK(manifest_to_json(back) == first);
  CHECK(back.schema_version == 1);
  CHECK(back.source_digest == m.source_digest);
  CHECK(back.pages.size() == m.pages.size());
  CHECK(back.elements.size() == m.elements.size());
}

TEST_CASE("manifest loader rejects foreign schema versions") {
  const DocumentManifest m = run_doc(doc("blank"));
  std::string text = manifest_to_json(m);
  const std::string needle = "\"schema_version\": 1";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), "\"schema_version\": 7");
  CHECK_THROWS_AS(manifest_from_json(text), std::invalid_argument);
}

TEST_CASE("repeated runs and thread counts leave the manifest byte-stable") {
  const fixtures::CorpusDoc& d = doc("mixed_page");
  PipelineConfig serial;
  serial.jobs = 1;
  const std::string a = manifest_to_json(run_doc(d, serial));
  const std::string b = manifest_to_json(run_doc(d, serial));
  CHECK(a == b);
  PipelineConfig parallel;
  parallel.jobs = 4;
  CHECK(manifest_to_json(run_doc(d, parallel)) == a);
}

TEST_CASE("file-based runs match in-memory runs") {
  const fixtures::CorpusDoc& d = doc("acroform_basic");
  const fs::path path = scratch("doc.pdf");
  {
    std::ofstream out(path, std::ios::binary);
    out.write(d.pdf.data(), static_cast<std::streamsize>(d.pdf.size()));
  }
  PipelineConfig cfg;
  OwnedProviders owned = make_providers(cfg);
  const DocumentManifest from_file =
      run_pipeline_file(path.string(), cfg, owned.view());
  CHECK(manifest_to_json(from_file) == manifest_to_json(run_doc(d)));
  fs::remove(path);
  CHECK_THROWS(run_pipeline_file(path.string(), cfg, owned.view()));
}

TEST_CASE("eval input mirrors pages, keep flags and captions") {
  const DocumentManifest m = run_doc(doc("small_decorations"));
  const EvalInput input = manifest_to_eval_input(m);
  REQUIRE(input.page_texts.size() == m.pages.size());
  for (std::size_t i = 0; i < m.pages.size(); ++i)
    CHECK(input.page_texts[i] == m.pages[i].normalized_text);

  REQUIRE(input.elements.size() == m.elements.size());
  bool saw_filtered = false;
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    CHECK(input.elements[i].type == m.elements[i].kind);
    CHECK(input.elements[i].keep == m.elements[i].verdict.keep);
    CHECK(input.elements[i].bbox == m.elements[i].bbox);
    saw_filtered = saw_filtered || !m.elements[i].verdict.keep;
  }
  CHECK(saw_filtered);  // this document exists to exercise the size filter

  for (const ElementCaption& c : m.captions) {
    const auto it = std::find_if(
        m.elements.begin(), m.elements.end(),
        [&](const VisualElement& el) { return el.id == c.element_id; });
    REQUIRE(it != m.elements.end());
    const std::size_t idx =
        static_cast<std::size_t>(it - m.elements.begin());
    REQUIRE(input.elements[idx].caption.has_value());
    CHECK(*input.elements[idx].caption == c.text);
  }
}

TEST_CASE("raster export writes kept images only") {
  const DocumentManifest m = run_doc(doc("small_decorations"));
  const fs::path dir = scratch("rasters");
  fs::remove_all(dir);
  const std::vector<std::string> written =
      write_element_rasters(m, dir.string());

  std::size_t expected = 0;
  for (const VisualElement& el : m.elements)
    if (el.kind == ElementKind::Image && el.verdict.keep &&
        el.image.raster() && el.image.raster()->valid())
      ++expected;
  REQUIRE(expected > 0);
  CHECK(written.size() == expected);

  for (const std::string& path : written) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    CHECK(sig[0] == 0x89);
    CHECK(sig[1] == 'P');
    CHECK(sig[2] == 'N');
    CHECK(sig[3] == 'G');
  }
  // Filtered elements never land on disk.
  for (const VisualElement& el : m.elements)
    if (!el.verdict.keep)
      CHECK_FALSE(fs::exists(dir / (el.id + ".png")));
  fs::remove_all(dir);
}

TEST_CASE("merged fragments keep their provenance") {
  const DocumentManifest m = run_doc(doc("fragment_pair"));
  const auto it = std::find_if(
      m.elements.begin(), m.elements.end(), [](const VisualElement& el) {
        return el.kind == ElementKind::Image && !el.merged_parts.empty();
      });
  REQUIRE(it != m.elements.end());
  CHECK(it->merged_parts.size() >= 2);
  BoundingBox fused = it->merged_parts.front().bbox;
  for (const ImageRegion& part : it->merged_parts)
    fused = BoundingBox(std::min(fused.x0, part.bbox.x0),
                        std::min(fused.y0, part.bbox.y0),
                        std::max(fused.x1, part.bbox.x1),
                        std::max(fused.y1, part.bbox.y1));
  CHECK(it->bbox == fused);
  // Unmerged images carry no parts list.
  for (const VisualElement& el : m.elements)
    if (el.kind == ElementKind::Image && el.merged_parts.empty())
      CHECK(el.image.bbox == el.bbox);
}
