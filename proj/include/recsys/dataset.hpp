#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace recsys {

struct RatingScale {
  double r_min = 1.0;
  double r_max = 5.0;
};

struct Triplet {
  std::uint32_t user = 0;
  std::uint32_t item = 0;
  double rating = 0.0;
  std::optional<std::int64_t> timestamp;
};

enum class RatingsFormat { movielens_dat, movielens_tab, comoda_csv };
enum class EntityKind { user, item };

RatingsFormat parse_format(const std::string& name);  // throws ValidateError
std::string format_name(RatingsFormat format);

struct IngestReport {
  std::size_t lines = 0;         // data lines seen (header excluded)
  std::size_t kept = 0;          // triplets in the final dataset
  std::size_t duplicates = 0;    // (user,item) repeats; last occurrence kept
  std::size_t malformed = 0;     // skipped: wrong field count / unparsable
  std::size_t out_of_range = 0;  // skipped: rating outside [r_min, r_max]
};

/// Sparse (user, item, rating) triplets with dense index maps. Immutable
/// after construction; safe to share read-only across threads.
class RatingsDataset {
 public:
  RatingsDataset() = default;
  RatingsDataset(std::vector<std::string> user_ids, std::vector<std::string> item_ids,
                 std::vector<Triplet> triplets, RatingScale scale);

  std::size_t user_count() const { return user_ids_.size(); }
  std::size_t item_count() const { return item_ids_.size(); }
  const std::vector<Triplet>& triplets() const { return triplets_; }
  RatingScale scale() const { return scale_; }
  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  std::optional<std::uint32_t> user_index(const std::string& external_id) const;
  std::optional<std::uint32_t> item_index(const std::string& external_id) const;
  double global_mean() const;
  bool empty() const { return triplets_.empty(); }

 private:
  std::vector<std::string> user_ids_;  // dense index -> external id
  std::vector<std::string> item_ids_;
  std::unordered_map<std::string, std::uint32_t> user_index_;
  std::unordered_map<std::string, std::uint32_t> item_index_;
  std::vector<Triplet> triplets_;
  RatingScale scale_;
};

/// Parse a ratings file. Duplicate (user,item) pairs keep the last
/// occurrence; malformed and out-of-range lines are skipped and counted.
/// Throws IoError / ParseError (no valid triplet survives).
RatingsDataset load_ratings(const std::string& path, RatingsFormat format,
                            RatingScale scale = {}, IngestReport* report = nullptr);

/// Same parse on an in-memory buffer (used by tests and the canonical CSV
/// round-trip).
RatingsDataset parse_ratings(const std::string& content, RatingsFormat format,
                             RatingScale scale = {}, IngestReport* report = nullptr);

struct SplitPair {
  RatingsDataset train;
  RatingsDataset test;
  std::uint64_t seed = 0;
  double ratio = 0.0;
};

/// Seeded shuffle split: triplets are permuted by a SplitMix64-driven
/// Fisher-Yates shuffle and the first ceil(ratio*N) go to train. Both halves
/// share the source's index maps and rating scale.
SplitPair split(const RatingsDataset& source, double ratio, std::uint64_t seed);

/// Items sorted by descending rating count (ties: ascending item index);
/// entry k is (rank k+1 starting at 1, count of the k-th most rated item).
std::vector<std::pair<std::size_t, std::size_t>> popularity_curve(const RatingsDataset&);

/// Companion mode: frequency of each distinct rating value, ascending value.
std::vector<std::pair<double, std::size_t>> rating_value_curve(const RatingsDataset&);

/// Entity indices ordered by descending rating count, ties ascending index.
std::vector<std::uint32_t> popularity_order(const RatingsDataset&, EntityKind kind);

/// Canonical form: `user,item,rating,timestamp` header, LF endings, ratings
/// with one decimal place, empty timestamp field when absent.
std::string to_canonical_csv(const RatingsDataset&);
void write_canonical_csv(const RatingsDataset&, const std::string& path);

std::string to_popularity_csv(const std::vector<std::pair<std::size_t, std::size_t>>&);
std::string to_value_curve_csv(const std::vector<std::pair<double, std::size_t>>&);

/// Build a dataset from raw triplets over synthetic id spaces 0..m-1 /
/// 0..n-1 (external ids are the decimal indices). Generator/test helper.
RatingsDataset dataset_from_triplets(std::size_t m, std::size_t n,
                                     std::vector<Triplet> triplets, RatingScale scale = {});

}  // namespace recsys
