#ifndef PDFVEX_FIXTURES_CORPUS_HPP
#define PDFVEX_FIXTURES_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdfvex/filter.hpp"
#include "pdfvex/metrics.hpp"

namespace pdfvex::fixtures {

/// One generated document: serialized bytes plus the reference annotations
/// the generator derived while drawing (so boxes are exact, not estimated).
struct CorpusDoc {
  std::string name;  // file stem
  std::string pdf;   // full document bytes
  GroundTruth truth;
  std::vector<std::string> tags;  // coverage descriptors ("table", "merge", ...)
  /// Geometry alone decides every scripted caption on this document, so the
  /// association must be exact even with semantic scoring disabled.
  bool layout_unambiguous = false;
  int page_count = 0;
};

struct Corpus {
  std::uint32_t seed = 0;
  std::vector<CorpusDoc> docs;
  std::vector<LogoReference> logo_refs;       // embeddings of the corner logo
  std::vector<std::string> watermark_vocab;   // keyword list used when drawing
};

/// Builds the full document set. The seed recolors the procedural figure
/// content (annotations stay valid); a fixed seed always produces
/// byte-identical output.
Corpus build_corpus(std::uint32_t seed = 0);

/// Writes <name>.pdf, <name>.gt.json and <name>.meta.json per document,
/// plus logos.txt, watermark_vocab.txt and index.json.
void write_corpus(const Corpus& corpus, const std::string& dir);

}  // namespace pdfvex::fixtures

#endif  // PDFVEX_FIXTURES_CORPUS_HPP
