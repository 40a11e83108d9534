#ifndef PDFVEX_TABLES_HPP
#define PDFVEX_TABLES_HPP

#include <utility>
#include <vector>

#include "pdfvex/page_model.hpp"

namespace pdfvex {

struct TableParams {
  /// A page with at least this many line drawings is a bordered table page.
  int min_lines = 5;
  /// Minimum number of qualifying x alignments and y alignments (each with
  /// multiplicity >= 3) for the unbordered branch.
  int min_alignments = 2;
  /// Lines shorter than this are ignored as underline/glyph noise when
  /// counting borders. Zero disables the guard.
  double min_line_length = 8.0;
  /// Evidence boxes further apart than this split into separate regions.
  double region_split_gap = 36.0;
};

enum class TableKind { None, Bordered, Unbordered };

struct TableDetection {
  bool present = false;
  TableKind kind = TableKind::None;
  std::vector<BoundingBox> regions;
  struct Evidence {
    int line_count = 0;
    int x_alignments = 0;
    int y_alignments = 0;
  } evidence;
};

/// Distinct rounded x0 / y0 values (nearest integer) shared by at least three
/// blocks with non-empty text.
std::pair<int, int> count_alignments(const std::vector<TextBlock>& blocks);

/// Border evidence first (enough long line drawings), otherwise repeated
/// aligned block corners. Region boxes cover the evidence, split into
/// clusters whenever the gap between boxes exceeds region_split_gap.
TableDetection detect_table(const PageModel& page, const TableParams& params = {});

const char* table_kind_name(TableKind kind);

}  // namespace pdfvex

#endif  // PDFVEX_TABLES_HPP
