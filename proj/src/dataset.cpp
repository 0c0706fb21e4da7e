#include "recsys/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/prng.hpp"

namespace recsys {

RatingsFormat parse_format(const std::string& name) {
  if (name == "movielens_dat") return RatingsFormat::movielens_dat;
  if (name == "movielens_tab") return RatingsFormat::movielens_tab;
  if (name == "comoda_csv") return RatingsFormat::comoda_csv;
  throw ValidateError("unknown ratings format: " + name);
}

std::string format_name(RatingsFormat format) {
  switch (format) {
    case RatingsFormat::movielens_dat: return "movielens_dat";
    case RatingsFormat::movielens_tab: return "movielens_tab";
    case RatingsFormat::comoda_csv: return "comoda_csv";
  }
  return "?";
}

RatingsDataset::RatingsDataset(std::vector<std::string> user_ids,
                               std::vector<std::string> item_ids,
                               std::vector<Triplet> triplets, RatingScale scale)
    : user_ids_(std::move(user_ids)),
      item_ids_(std::move(item_ids)),
      triplets_(std::move(triplets)),
      scale_(scale) {
  user_index_.reserve(user_ids_.size());
  for (std::uint32_t i = 0; i < user_ids_.size(); ++i) user_index_.emplace(user_ids_[i], i);
  item_index_.reserve(item_ids_.size());
  for (std::uint32_t i = 0; i < item_ids_.size(); ++i) item_index_.emplace(item_ids_[i], i);
}

std::optional<std::uint32_t> RatingsDataset::user_index(const std::string& id) const {
  auto it = user_index_.find(id);
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> RatingsDataset::item_index(const std::string& id) const {
  auto it = item_index_.find(id);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

double RatingsDataset::global_mean() const {
  if (triplets_.empty()) return 0.0;
  double sum = 0.0;
  for (const Triplet& t : triplets_) sum += t.rating;
  return sum / static_cast<double>(triplets_.size());
}

namespace {

struct RawRow {
  std::string user;
  std::string item;
  double rating;
  std::optional<std::int64_t> timestamp;
};

void split_fields(const std::string& line, const std::string& sep,
                  std::vector<std::string>& out) {
  out.clear();
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      return;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

bool parse_number(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e && std::isfinite(out);
}

bool parse_timestamp(const std::string& s, std::int64_t& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

RatingsDataset parse_ratings(const std::string& content, RatingsFormat format,
                             RatingScale scale, IngestReport* report) {
  if (scale.r_min >= scale.r_max)
    throw ValidateError("r_min must be strictly below r_max");

  IngestReport rep;
  std::vector<RawRow> rows;
  std::vector<std::string> fields;

  std::istringstream in(content);
  std::string line;
  bool header_pending = format == RatingsFormat::comoda_csv;
  bool csv_has_timestamp = false;
  while (std::getline(in, line)) {
    line = trim_cr(line);
    if (header_pending) {
      // Header row; a literal 4th column named "timestamp" marks the
      // canonical form, whose timestamps survive round-trips.
      split_fields(line, ",", fields);
      csv_has_timestamp = fields.size() >= 4 && fields[3] == "timestamp";
      header_pending = false;
      continue;
    }
    if (line.empty()) continue;
    ++rep.lines;

    switch (format) {
      case RatingsFormat::movielens_dat: split_fields(line, "::", fields); break;
      case RatingsFormat::movielens_tab: split_fields(line, "\t", fields); break;
      case RatingsFormat::comoda_csv: split_fields(line, ",", fields); break;
    }
    if (fields.size() < 3 || fields[0].empty() || fields[1].empty()) {
      ++rep.malformed;
      continue;
    }
    RawRow row;
    row.user = fields[0];
    row.item = fields[1];
    if (!parse_number(fields[2], row.rating)) {
      ++rep.malformed;
      continue;
    }
    bool want_ts = fields.size() >= 4 &&
                   (format != RatingsFormat::comoda_csv || csv_has_timestamp);
    if (want_ts && !fields[3].empty()) {
      std::int64_t ts;
      if (parse_timestamp(fields[3], ts)) row.timestamp = ts;
    }
    if (row.rating < scale.r_min || row.rating > scale.r_max) {
      ++rep.out_of_range;
      continue;
    }
    rows.push_back(std::move(row));
  }

  // Last occurrence of each (user,item) wins; surviving rows keep file order.
  std::vector<char> keep(rows.size(), 1);
  {
    std::unordered_map<std::string, std::size_t> seen;
    seen.reserve(rows.size());
    for (std::size_t i = rows.size(); i-- > 0;) {
      std::string key = rows[i].user + '\x1f' + rows[i].item;
      auto [it, inserted] = seen.emplace(std::move(key), i);
      (void)it;
      if (!inserted) {
        keep[i] = 0;
        ++rep.duplicates;
      }
    }
  }

  std::vector<std::string> user_ids, item_ids;
  std::unordered_map<std::string, std::uint32_t> user_index, item_index;
  std::vector<Triplet> triplets;
  triplets.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!keep[i]) continue;
    RawRow& row = rows[i];
    auto uit = user_index.find(row.user);
    if (uit == user_index.end()) {
      uit = user_index.emplace(row.user, static_cast<std::uint32_t>(user_ids.size())).first;
      user_ids.push_back(row.user);
    }
    auto iit = item_index.find(row.item);
    if (iit == item_index.end()) {
      iit = item_index.emplace(row.item, static_cast<std::uint32_t>(item_ids.size())).first;
      item_ids.push_back(row.item);
    }
    triplets.push_back(Triplet{uit->second, iit->second, row.rating, row.timestamp});
  }
  rep.kept = triplets.size();
  if (report != nullptr) *report = rep;

  if (triplets.empty()) {
    throw ParseError("no valid triplet parsed (" + std::to_string(rep.malformed) +
                     " malformed, " + std::to_string(rep.out_of_range) +
                     " out of range)");
  }
  return RatingsDataset(std::move(user_ids), std::move(item_ids), std::move(triplets), scale);
}

RatingsDataset load_ratings(const std::string& path, RatingsFormat format,
                            RatingScale scale, IngestReport* report) {
  return parse_ratings(read_file(path), format, scale, report);
}

SplitPair split(const RatingsDataset& source, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ValidateError("split ratio must lie strictly inside (0,1)");
  if (source.empty()) throw ValidateError("cannot split an empty dataset");

  std::vector<std::size_t> order(source.triplets().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = order.size() - 1; i >= 1; --i) {
    std::size_t j = rng.bounded(i + 1);
    std::swap(order[i], order[j]);
  }

  const std::size_t total = order.size();
  const std::size_t train_count =
      static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(total)));

  std::vector<Triplet> train_t, test_t;
  train_t.reserve(train_count);
  test_t.reserve(total - train_count);
  for (std::size_t i = 0; i < total; ++i) {
    const Triplet& t = source.triplets()[order[i]];
    if (i < train_count)
      train_t.push_back(t);
    else
      test_t.push_back(t);
  }

  SplitPair pair;
  pair.train = RatingsDataset(source.user_ids(), source.item_ids(), std::move(train_t),
                              source.scale());
  pair.test = RatingsDataset(source.user_ids(), source.item_ids(), std::move(test_t),
                             source.scale());
  pair.seed = seed;
  pair.ratio = ratio;
  return pair;
}

namespace {

std::vector<std::size_t> entity_counts(const RatingsDataset& ds, EntityKind kind) {
  std::vector<std::size_t> counts(
      kind == EntityKind::user ? ds.user_count() : ds.item_count(), 0);
  for (const Triplet& t : ds.triplets())
    ++counts[kind == EntityKind::user ? t.user : t.item];
  return counts;
}

}  // namespace

std::vector<std::uint32_t> popularity_order(const RatingsDataset& ds, EntityKind kind) {
  std::vector<std::size_t> counts = entity_counts(ds, kind);
  std::vector<std::uint32_t> order(counts.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  });
  return order;
}

std::vector<std::pair<std::size_t, std::size_t>> popularity_curve(const RatingsDataset& ds) {
  if (ds.empty()) throw ValidateError("popularity_curve: empty dataset");
  std::vector<std::size_t> counts = entity_counts(ds, EntityKind::item);
  std::vector<std::uint32_t> order = popularity_order(ds, EntityKind::item);
  std::vector<std::pair<std::size_t, std::size_t>> curve;
  curve.reserve(order.size());
  std::size_t rank = 1;
  for (std::uint32_t item : order) {
    if (counts[item] == 0) break;  // split halves may hold unseen items
    curve.emplace_back(rank++, counts[item]);
  }
  return curve;
}

std::vector<std::pair<double, std::size_t>> rating_value_curve(const RatingsDataset& ds) {
  if (ds.empty()) throw ValidateError("rating_value_curve: empty dataset");
  std::map<double, std::size_t> freq;
  for (const Triplet& t : ds.triplets()) ++freq[t.rating];
  return {freq.begin(), freq.end()};
}

std::string to_canonical_csv(const RatingsDataset& ds) {
  std::string out = "user,item,rating,timestamp\n";
  for (const Triplet& t : ds.triplets()) {
    out += ds.user_ids()[t.user];
    out += ',';
    out += ds.item_ids()[t.item];
    out += ',';
    out += format_fixed(t.rating, 1);
    out += ',';
    if (t.timestamp) out += std::to_string(*t.timestamp);
    out += '\n';
  }
  return out;
}

void write_canonical_csv(const RatingsDataset& ds, const std::string& path) {
  write_file(path, to_canonical_csv(ds));
}

std::string to_popularity_csv(const std::vector<std::pair<std::size_t, std::size_t>>& curve) {
  std::string out = "rank,count\n";
  for (const auto& [rank, count] : curve)
    out += std::to_string(rank) + "," + std::to_string(count) + "\n";
  return out;
}

std::string to_value_curve_csv(const std::vector<std::pair<double, std::size_t>>& curve) {
  std::string out = "value,count\n";
  for (const auto& [value, count] : curve)
    out += format_double(value, 17) + "," + std::to_string(count) + "\n";
  return out;
}

RatingsDataset dataset_from_triplets(std::size_t m, std::size_t n,
                                     std::vector<Triplet> triplets, RatingScale scale) {
  std::vector<std::string> user_ids(m), item_ids(n);
  for (std::size_t i = 0; i < m; ++i) user_ids[i] = std::to_string(i);
  for (std::size_t j = 0; j < n; ++j) item_ids[j] = std::to_string(j);
  return RatingsDataset(std::move(user_ids), std::move(item_ids), std::move(triplets), scale);
}

}  // namespace recsys
