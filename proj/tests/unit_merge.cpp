// Fragment-merge invariants: threshold strictness, transitive grouping,
// raster selection, idempotence and input-order independence.
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pdfvex/merge.hpp"

using namespace pdfvex;

namespace {

ImageRegion region(double x0, double y0, double x1, double y1,
                   const std::string& digest = "") {
  ImageRegion r;
  r.bbox = BoundingBox(x0, y0, x1, y1);
  r.content_digest = digest;
  return r;
}

/// Component fingerprint: the sorted digest multiset of each group's parts,
/// with groups sorted for comparison across input orders.
std::set<std::vector<std::string>> fingerprint(
    const std::vector<MergedImage>& merged) {
  std::set<std::vector<std::string>> out;
  for (const MergedImage& m : merged) {
    std::vector<std::string> digests;
    for (const ImageRegion& part : m.parts)
      digests.push_back(part.content_digest);
    std::sort(digests.begin(), digests.end());
    out.insert(std::move(digests));
  }
  return out;
}

std::vector<ImageRegion> random_regions(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> pos(0.0, 400.0);
  std::uniform_real_distribution<double> size(10.0, 140.0);
  std::vector<ImageRegion> regions;
  for (int i = 0; i < n; ++i) {
    const double x = pos(rng), y = pos(rng);
    regions.push_back(
        region(x, y, x + size(rng), y + size(rng), "d" + std::to_string(i)));
  }
  return regions;
}

}  // namespace

TEST_CASE("overlap exactly at the threshold does not merge") {
  // Two 100x100 squares overlapping 40 wide: inter 4000, union 16000,
  // ratio exactly 0.25 — not strictly above the default threshold.
  std::vector<ImageRegion> at = {region(0, 0, 100, 100),
                                 region(60, 0, 160, 100)};
  CHECK(iou_overlap(at[0].bbox, at[1].bbox) == doctest::Approx(0.25));
  CHECK(merge_images(at).size() == 2);

  // One point wider overlap pushes the ratio above 0.25 and merges.
  std::vector<ImageRegion> above = {region(0, 0, 100, 100),
                                    region(59, 0, 159, 100)};
  CHECK(iou_overlap(above[0].bbox, above[1].bbox) > 0.25);
  const auto merged = merge_images(above);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].bbox == BoundingBox(0, 0, 159, 100));
  CHECK(merged[0].parts.size() == 2);
}

TEST_CASE("chains merge transitively even when the ends never touch") {
  // A overlaps B, B overlaps C, A and C are disjoint.
  std::vector<ImageRegion> chain = {region(0, 0, 100, 100, "a"),
                                    region(50, 0, 150, 100, "b"),
                                    region(100, 0, 200, 100, "c")};
  CHECK(iou_overlap(chain[0].bbox, chain[2].bbox) == 0.0);
  const auto merged = merge_images(chain);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].bbox == BoundingBox(0, 0, 200, 100));
  CHECK(merged[0].parts.size() == 3);
}

TEST_CASE("the largest fragment donates the surviving raster") {
  auto big = std::make_shared<RasterImage>(RasterImage::filled(8, 8, 1, 2, 3));
  auto small = std::make_shared<RasterImage>(RasterImage::filled(2, 2, 9, 9, 9));
  ImageRegion a = region(0, 0, 50, 50, "small");
  a.pixels = small;
  ImageRegion b = region(5, 0, 155, 50, "big");
  b.pixels = big;
  const auto merged = merge_images({a, b});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].primary.content_digest == "big");
  CHECK(merged[0].primary.pixels == big);
  // Parts keep input order.
  REQUIRE(merged[0].parts.size() == 2);
  CHECK(merged[0].parts[0].content_digest == "small");
  CHECK(merged[0].parts[1].content_digest == "big");
}

TEST_CASE("groups preserve ascending first-member order") {
  std::vector<ImageRegion> regions = {
      region(300, 300, 400, 400, "x"),  // component 0 (first seen)
      region(0, 0, 100, 100, "y"),      // component 1
      region(310, 300, 410, 400, "z"),  // joins component 0
  };
  const auto merged = merge_images(regions);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].parts.front().content_digest == "x");
  CHECK(merged[1].parts.front().content_digest == "y");
}

TEST_CASE("empty and single inputs pass through unchanged") {
  CHECK(merge_images({}).empty());
  const auto merged = merge_images({region(5, 5, 50, 50, "only")});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].bbox == BoundingBox(5, 5, 50, 50));
  CHECK(merged[0].primary.content_digest == "only");
  CHECK(merged[0].parts.size() == 1);
}

TEST_CASE("merging is idempotent over its own output") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> count(0, 10);
  int verified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto regions = random_regions(rng, count(rng));
    const auto merged = merge_images(regions);

    // Re-merging applies only when the collapsed elements stand apart; when
    // two collapsed boxes themselves overlap strongly they would (correctly)
    // merge again, so restrict the check to the stable case.
    bool stable = true;
    for (std::size_t i = 0; i < merged.size() && stable; ++i)
      for (std::size_t j = i + 1; j < merged.size(); ++j)
        if (iou_overlap(merged[i].bbox, merged[j].bbox) > 0.25) {
          stable = false;
          break;
        }
    if (!stable) continue;
    ++verified;

    std::vector<ImageRegion> collapsed;
    for (const MergedImage& m : merged) {
      ImageRegion r = m.primary;
      r.bbox = m.bbox;
      collapsed.push_back(std::move(r));
    }
    const auto again = merge_images(collapsed);
    REQUIRE(again.size() == merged.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again[i].bbox == merged[i].bbox);
      CHECK(again[i].parts.size() == 1);
    }
  }
  CHECK(verified > 100);  // the restriction must not hollow out the test
}

TEST_CASE("component structure is independent of input order") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> count(2, 10);
  for (int trial = 0; trial < 100; ++trial) {
    auto regions = random_regions(rng, count(rng));
    const auto baseline = fingerprint(merge_images(regions));

    auto shuffled = regions;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(fingerprint(merge_images(shuffled)) == baseline);
  }
}

TEST_CASE("the primary choice is order-independent for distinct areas") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    auto regions = random_regions(rng, 6);
    auto primary_of = [](const std::vector<MergedImage>& ms) {
      std::set<std::string> out;
      for (const auto& m : ms) out.insert(m.primary.content_digest);
      return out;
    };
    const auto baseline = primary_of(merge_images(regions));
    auto shuffled = regions;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(primary_of(merge_images(shuffled)) == baseline);
  }
}
