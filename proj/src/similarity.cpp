#include "recsys/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/threads.hpp"

namespace recsys {

SimilarityMatrix::SimilarityMatrix(EntityKind kind, std::size_t size,
                                   std::vector<Entry> entries)
    : kind_(kind), size_(size), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  // symmetric adjacency, CSR layout
  std::vector<std::size_t> degree(size_ + 1, 0);
  for (const Entry& e : entries_) {
    ++degree[e.a + 1];
    ++degree[e.b + 1];
  }
  row_offset_.assign(size_ + 1, 0);
  for (std::size_t i = 0; i < size_; ++i) row_offset_[i + 1] = row_offset_[i] + degree[i + 1];
  adjacency_.resize(row_offset_[size_]);
  std::vector<std::size_t> cursor(row_offset_.begin(), row_offset_.end() - 1);
  for (const Entry& e : entries_) {
    adjacency_[cursor[e.a]++] = {e.b, e.sim};
    adjacency_[cursor[e.b]++] = {e.a, e.sim};
  }
  for (std::size_t i = 0; i < size_; ++i)
    std::sort(adjacency_.begin() + row_offset_[i], adjacency_.begin() + row_offset_[i + 1]);
}

double SimilarityMatrix::at(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return 1.0;
  auto row = neighbors(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const auto& p, std::uint32_t x) { return p.first < x; });
  if (it != row.end() && it->first == b) return it->second;
  return 0.0;
}

std::span<const std::pair<std::uint32_t, double>> SimilarityMatrix::neighbors(
    std::uint32_t e) const {
  return {adjacency_.data() + row_offset_[e], row_offset_[e + 1] - row_offset_[e]};
}

namespace {

struct Csr {
  std::vector<std::size_t> offset;
  std::vector<std::pair<std::uint32_t, double>> items;  // (index, rating)

  std::span<const std::pair<std::uint32_t, double>> row(std::size_t i) const {
    return {items.data() + offset[i], offset[i + 1] - offset[i]};
  }
};

// rows indexed by `major`, columns carried as entries; entries sorted by
// column within each row
Csr build_csr(const RatingsDataset& ds, EntityKind major) {
  const std::size_t rows = major == EntityKind::user ? ds.user_count() : ds.item_count();
  Csr csr;
  csr.offset.assign(rows + 1, 0);
  for (const Triplet& t : ds.triplets())
    ++csr.offset[(major == EntityKind::user ? t.user : t.item) + 1];
  for (std::size_t i = 0; i < rows; ++i) csr.offset[i + 1] += csr.offset[i];
  csr.items.resize(ds.triplets().size());
  std::vector<std::size_t> cursor(csr.offset.begin(), csr.offset.end() - 1);
  for (const Triplet& t : ds.triplets()) {
    const std::uint32_t r = major == EntityKind::user ? t.user : t.item;
    const std::uint32_t c = major == EntityKind::user ? t.item : t.user;
    csr.items[cursor[r]++] = {c, t.rating};
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::sort(csr.items.begin() + csr.offset[i], csr.items.begin() + csr.offset[i + 1]);
  }
  return csr;
}

double cosine_from_sums(double dot, double na, double nb) {
  const double denom = std::sqrt(na) * std::sqrt(nb);
  if (denom <= 0.0) return 0.0;
  return std::min(std::max(dot / denom, 0.0), 1.0);
}

}  // namespace

SimilarityMatrix similarity_matrix(const RatingsDataset& ds, EntityKind mode,
                                   std::size_t min_shared) {
  if (ds.empty()) throw ValidateError("similarity_matrix: empty dataset");
  const Csr entities = build_csr(ds, mode);
  const Csr features =
      build_csr(ds, mode == EntityKind::user ? EntityKind::item : EntityKind::user);
  const std::size_t count = entities.offset.size() - 1;

  std::vector<std::vector<SimilarityMatrix::Entry>> rows(count);

#pragma omp parallel num_threads(configured_threads())
  {
    // per-pair partial sums, indexed by the partner entity
    std::vector<double> dot(count, 0.0), na(count, 0.0), nb(count, 0.0);
    std::vector<std::size_t> shared(count, 0);
    std::vector<std::uint32_t> touched;

#pragma omp for schedule(dynamic, 16)
    for (std::size_t a = 0; a < count; ++a) {
      touched.clear();
      for (const auto& [feature, ra] : entities.row(a)) {
        for (const auto& [b, rb] : features.row(feature)) {
          if (b <= a) continue;
          if (shared[b] == 0) touched.push_back(b);
          ++shared[b];
          dot[b] += ra * rb;
          na[b] += ra * ra;
          nb[b] += rb * rb;
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& out = rows[a];
      out.reserve(touched.size());
      for (std::uint32_t b : touched) {
        if (shared[b] >= min_shared) {
          const double sim = cosine_from_sums(dot[b], na[b], nb[b]);
          if (sim > 0.0)
            out.push_back({static_cast<std::uint32_t>(a), b, sim});
        }
        shared[b] = 0;
        dot[b] = na[b] = nb[b] = 0.0;
      }
    }
  }

  std::vector<SimilarityMatrix::Entry> entries;
  for (auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
  return SimilarityMatrix(mode, count, std::move(entries));
}

SimilarityMatrix similarity_matrix_serial(const RatingsDataset& ds, EntityKind mode,
                                          std::size_t min_shared) {
  if (ds.empty()) throw ValidateError("similarity_matrix: empty dataset");
  const Csr entities = build_csr(ds, mode);
  const std::size_t count = entities.offset.size() - 1;

  std::vector<SimilarityMatrix::Entry> entries;
  for (std::size_t a = 0; a < count; ++a) {
    auto ra = entities.row(a);
    for (std::size_t b = a + 1; b < count; ++b) {
      auto rb = entities.row(b);
      double dot = 0.0, na = 0.0, nb = 0.0;
      std::size_t shared = 0;
      std::size_t p = 0, q = 0;
      while (p < ra.size() && q < rb.size()) {
        if (ra[p].first < rb[q].first) {
          ++p;
        } else if (ra[p].first > rb[q].first) {
          ++q;
        } else {
          ++shared;
          dot += ra[p].second * rb[q].second;
          na += ra[p].second * ra[p].second;
          nb += rb[q].second * rb[q].second;
          ++p;
          ++q;
        }
      }
      if (shared >= min_shared && shared > 0) {
        const double sim = cosine_from_sums(dot, na, nb);
        if (sim > 0.0)
          entries.push_back({static_cast<std::uint32_t>(a),
                             static_cast<std::uint32_t>(b), sim});
      }
    }
  }
  return SimilarityMatrix(mode, count, std::move(entries));
}

RadiusVector similarity_radius(const SimilarityMatrix& sim) {
  RadiusVector out;
  out.kind = sim.kind();
  out.radii.resize(sim.size(), 0);
  for (std::size_t e = 0; e < sim.size(); ++e) out.radii[e] = sim.neighbors(e).size();
  return out;
}

RadiusSeries radius_vs_popularity(const RatingsDataset& ds, const RadiusVector& radii) {
  const std::size_t count =
      radii.kind == EntityKind::user ? ds.user_count() : ds.item_count();
  if (radii.radii.size() != count)
    throw ValidateError("radius_vs_popularity: radii do not match the dataset");
  RadiusSeries series;
  series.entity = popularity_order(ds, radii.kind);
  series.radius.reserve(count);
  for (std::uint32_t e : series.entity) series.radius.push_back(radii.radii[e]);

  std::vector<std::size_t> positive;
  for (std::size_t r : radii.radii)
    if (r > 0) positive.push_back(r);
  if (!positive.empty()) {
    std::sort(positive.begin(), positive.end());
    const std::size_t mid = positive.size() / 2;
    const double median =
        positive.size() % 2 == 1
            ? static_cast<double>(positive[mid])
            : 0.5 * static_cast<double>(positive[mid - 1] + positive[mid]);
    const double max_radius =
        static_cast<double>(*std::max_element(radii.radii.begin(), radii.radii.end()));
    series.skewness = median > 0.0 ? max_radius / median : 0.0;
  }
  return series;
}

double dpp_diversity(const SimilarityMatrix& sim,
                     const std::vector<std::uint32_t>& selection) {
  if (selection.empty()) throw ValidateError("dpp_diversity: empty selection");
  {
    std::vector<std::uint32_t> sorted = selection;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidateError("dpp_diversity: duplicate indices in selection");
  }
  const std::size_t n = selection.size();
  std::vector<double> s(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      s[p * n + q] = p == q ? 1.0 : sim.at(selection[p], selection[q]);

  // LU with partial pivoting; det = product of pivots, sign from row swaps
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(s[r * n + col]) > std::fabs(s[pivot * n + col])) pivot = r;
    if (s[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(s[pivot * n + c], s[col * n + c]);
      det = -det;
    }
    det *= s[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = s[r * n + col] / s[col * n + col];
      for (std::size_t c = col; c < n; ++c) s[r * n + c] -= factor * s[col * n + c];
    }
  }
  if (det < 0.0 && det >= -1e-12) det = 0.0;
  return det;
}

DenseGrid heatmap_data(const SimilarityMatrix& sim, HeatmapOrder order,
                       const std::vector<std::uint32_t>* popularity,
                       std::size_t dense_cutoff, std::optional<std::size_t> top_n) {
  std::vector<std::uint32_t> entity_order;
  if (order == HeatmapOrder::by_popularity) {
    if (popularity == nullptr || popularity->size() != sim.size())
      throw ValidateError("heatmap_data: by_popularity needs the popularity order");
    entity_order = *popularity;
  } else {
    entity_order.resize(sim.size());
    for (std::uint32_t i = 0; i < entity_order.size(); ++i) entity_order[i] = i;
  }

  if (sim.size() > dense_cutoff) {
    if (!top_n)
      throw ValidateError("heatmap_data: " + std::to_string(sim.size()) +
                          " entities exceed the dense cutoff; pass top_n");
    if (order != HeatmapOrder::by_popularity)
      throw ValidateError("heatmap_data: top_n submatrix requires by_popularity order");
    entity_order.resize(std::min<std::size_t>(*top_n, entity_order.size()));
  }

  DenseGrid grid;
  grid.n = entity_order.size();
  grid.entity_order = entity_order;
  grid.values.assign(grid.n * grid.n, 0.0);
  for (std::size_t r = 0; r < grid.n; ++r) {
    grid.values[r * grid.n + r] = 1.0;
    for (std::size_t c = r + 1; c < grid.n; ++c) {
      const double v = sim.at(entity_order[r], entity_order[c]);
      grid.values[r * grid.n + c] = v;
      grid.values[c * grid.n + r] = v;
    }
  }
  return grid;
}

std::string to_similarity_csv(const SimilarityMatrix& sim) {
  std::string out = "a,b,sim\n";
  for (const auto& e : sim.entries()) {
    out += std::to_string(e.a);
    out += ',';
    out += std::to_string(e.b);
    out += ',';
    out += format_double(e.sim, 17);
    out += '\n';
  }
  return out;
}

std::string to_radius_csv(const RadiusSeries& series) {
  std::string out = "entity,popularity_rank,radius\n";
  for (std::size_t r = 0; r < series.entity.size(); ++r) {
    out += std::to_string(series.entity[r]);
    out += ',';
    out += std::to_string(r + 1);
    out += ',';
    out += std::to_string(series.radius[r]);
    out += '\n';
  }
  return out;
}

std::string to_heatmap_csv(const DenseGrid& grid) {
  std::string out;
  for (std::size_t r = 0; r < grid.n; ++r) {
    for (std::size_t c = 0; c < grid.n; ++c) {
      if (c > 0) out += ',';
      out += format_double(grid.at(r, c), 17);
    }
    out += '\n';
  }
  return out;
}

SimilarityMatrix parse_similarity_csv(const std::string& content, EntityKind kind) {
  std::istringstream in(content);
  std::string line;
  bool header = true;
  std::vector<SimilarityMatrix::Entry> entries;
  std::uint32_t max_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::size_t c1 = line.find(',');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("similarity CSV: bad row: " + line);
    SimilarityMatrix::Entry e;
    auto ra = std::from_chars(line.data(), line.data() + c1, e.a);
    auto rb = std::from_chars(line.data() + c1 + 1, line.data() + c2, e.b);
    auto rs = std::from_chars(line.data() + c2 + 1, line.data() + line.size(), e.sim);
    if (ra.ec != std::errc() || rb.ec != std::errc() || rs.ec != std::errc())
      throw ParseError("similarity CSV: bad row: " + line);
    if (e.a >= e.b) throw ParseError("similarity CSV: rows must have a < b");
    entries.push_back(e);
    max_index = std::max(max_index, e.b);
  }
  const std::size_t size = entries.empty() ? 0 : max_index + 1;
  return SimilarityMatrix(kind, size, std::move(entries));
}

SimilarityMatrix read_similarity_csv(const std::string& path, EntityKind kind) {
  return parse_similarity_csv(read_file(path), kind);
}

DenseGrid parse_heatmap_csv(const std::string& content) {
  DenseGrid grid;
  std::istringstream in(content);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    std::size_t cols = 0;
    while (p < end) {
      double v;
      auto r = std::from_chars(p, end, v);
      if (r.ec != std::errc()) throw ParseError("heatmap CSV: bad value in row: " + line);
      grid.values.push_back(v);
      ++cols;
      p = r.ptr;
      if (p < end) {
        if (*p != ',') throw ParseError("heatmap CSV: expected comma in row: " + line);
        ++p;
      }
    }
    if (rows == 0)
      grid.n = cols;
    else if (cols != grid.n)
      throw ParseError("heatmap CSV: ragged row: " + line);
    ++rows;
  }
  if (rows != grid.n || grid.n == 0)
    throw ParseError("heatmap CSV: grid must be square and non-empty");
  grid.entity_order.resize(grid.n);
  for (std::uint32_t i = 0; i < grid.n; ++i) grid.entity_order[i] = i;
  return grid;
}

DenseGrid read_heatmap_csv(const std::string& path) {
  return parse_heatmap_csv(read_file(path));
}

}  // namespace recsys
