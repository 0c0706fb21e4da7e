#include "recsys/factor_model.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/prng.hpp"

namespace recsys {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "mf") return Algorithm::mf;
  if (name == "random") return Algorithm::random_placement;
  if (name == "zeromat") return Algorithm::zeromat;
  if (name == "dotmat") return Algorithm::dotmat;
  if (name == "dotmat_hybrid") return Algorithm::dotmat_hybrid;
  if (name == "user_cf") return Algorithm::user_cf;
  if (name == "item_cf") return Algorithm::item_cf;
  throw ValidateError("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::mf: return "mf";
    case Algorithm::random_placement: return "random";
    case Algorithm::zeromat: return "zeromat";
    case Algorithm::dotmat: return "dotmat";
    case Algorithm::dotmat_hybrid: return "dotmat_hybrid";
    case Algorithm::user_cf: return "user_cf";
    case Algorithm::item_cf: return "item_cf";
  }
  return "?";
}

double FactorModel::dot(std::size_t i, std::size_t j) const {
  const double* a = u.data() + i * k;
  const double* b = v.data() + j * k;
  double s = 0.0;
  for (std::size_t d = 0; d < k; ++d) s += a[d] * b[d];
  return s;
}

double dotmat_value(double x) { return std::pow(x, x); }

double dotmat_gradient(double x) { return std::pow(x, x) * (std::log(x) + 1.0); }

namespace {

// Entries uniform in (0, 1/sqrt(k)]: keeps initial dot products inside (0,1],
// where both the quotient updates and x^x are well-behaved. U rows first,
// then V rows, one draw per entry.
void init_factors(FactorModel& model, Rng& rng) {
  const double hi = 1.0 / std::sqrt(static_cast<double>(model.k));
  model.u.resize(model.m * model.k);
  model.v.resize(model.n * model.k);
  for (double& x : model.u) x = (1.0 - rng.uniform01()) * hi;
  for (double& x : model.v) x = (1.0 - rng.uniform01()) * hi;
}

void check_finite(const double* row, std::size_t k, std::size_t step, const char* what) {
  for (std::size_t d = 0; d < k; ++d) {
    if (!std::isfinite(row[d]))
      throw DivergedError(step, std::string("training diverged at step ") +
                                    std::to_string(step) + " (" + what +
                                    " went non-finite); try a smaller gamma");
  }
}

void notify(const StepObserver* obs, std::size_t step, const FactorModel& model) {
  if (obs != nullptr && obs->every > 0 && obs->fn && step % obs->every == 0)
    obs->fn(step, model);
}

void sgd_squared_loss(FactorModel& model, const RatingsDataset& train, double lambda,
                      std::size_t steps, std::size_t step_offset, Rng& rng,
                      const StepObserver* observer) {
  const std::size_t k = model.k;
  const double gamma = model.gamma;
  const std::vector<Triplet>& data = train.triplets();
  std::vector<double> ui_old(k);
  for (std::size_t s = 0; s < steps; ++s) {
    const Triplet& t = data[rng.bounded(data.size())];
    double* ui = model.u.data() + t.user * k;
    double* vj = model.v.data() + t.item * k;
    double dot = 0.0;
    for (std::size_t d = 0; d < k; ++d) dot += ui[d] * vj[d];
    const double e = t.rating - dot;
    for (std::size_t d = 0; d < k; ++d) ui_old[d] = ui[d];
    for (std::size_t d = 0; d < k; ++d) ui[d] += gamma * (e * vj[d] - lambda * ui[d]);
    for (std::size_t d = 0; d < k; ++d) vj[d] += gamma * (e * ui_old[d] - lambda * vj[d]);
    const std::size_t step = step_offset + s + 1;
    check_finite(ui, k, step, "user row");
    check_finite(vj, k, step, "item row");
    notify(observer, step, model);
  }
}

void sgd_power_loss(FactorModel& model, const RatingsDataset& train, std::size_t steps,
                    std::size_t step_offset, Rng& rng, const StepObserver* observer) {
  const std::size_t k = model.k;
  const double gamma = model.gamma;
  const double r_max = train.scale().r_max;
  const std::vector<Triplet>& data = train.triplets();
  std::vector<double> ui_old(k);
  for (std::size_t s = 0; s < steps; ++s) {
    const Triplet& t = data[rng.bounded(data.size())];
    double* ui = model.u.data() + t.user * k;
    double* vj = model.v.data() + t.item * k;
    double dot = 0.0;
    for (std::size_t d = 0; d < k; ++d) dot += ui[d] * vj[d];
    const double x = std::min(std::max(dot, kDotFloor), 1.0);
    const double e = dotmat_value(x) - t.rating / r_max;
    const std::size_t step = step_offset + s + 1;
    if (e != 0.0) {  // subgradient 0 at the kink
      const double coef = gamma * (e > 0.0 ? 1.0 : -1.0) * dotmat_gradient(x);
      for (std::size_t d = 0; d < k; ++d) ui_old[d] = ui[d];
      for (std::size_t d = 0; d < k; ++d) ui[d] -= coef * vj[d];
      for (std::size_t d = 0; d < k; ++d) vj[d] -= coef * ui_old[d];
      check_finite(ui, k, step, "user row");
      check_finite(vj, k, step, "item row");
    }
    notify(observer, step, model);
  }
}

void sgd_rating_free(FactorModel& model, std::size_t steps, std::size_t step_offset,
                     Rng& rng, const StepObserver* observer) {
  const std::size_t k = model.k;
  const double gamma = model.gamma;
  std::vector<double> ui_old(k);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.bounded(model.m);
    const std::size_t j = rng.bounded(model.n);
    double* ui = model.u.data() + i * k;
    double* vj = model.v.data() + j * k;
    double dot = 0.0;
    for (std::size_t d = 0; d < k; ++d) dot += ui[d] * vj[d];
    const double denom =
        std::fabs(dot) < kDotFloor ? std::copysign(kDotFloor, dot) : dot;
    for (std::size_t d = 0; d < k; ++d) ui_old[d] = ui[d];
    for (std::size_t d = 0; d < k; ++d) ui[d] += gamma * (vj[d] / denom - 2.0 * ui[d]);
    for (std::size_t d = 0; d < k; ++d) vj[d] += gamma * (ui_old[d] / denom - 2.0 * vj[d]);
    const std::size_t step = step_offset + s + 1;
    check_finite(ui, k, step, "user row");
    check_finite(vj, k, step, "item row");
    notify(observer, step, model);
  }
}

FactorModel make_model(Algorithm algo, std::size_t m, std::size_t n,
                       const TrainOptions& opts) {
  if (m == 0 || n == 0) throw ValidateError("model dimensions must be positive");
  if (opts.k == 0) throw ValidateError("latent dimension k must be >= 1");
  if (!(opts.gamma > 0.0)) throw ValidateError("gamma must be positive");
  FactorModel model;
  model.algorithm = algo;
  model.m = m;
  model.n = n;
  model.k = opts.k;
  model.gamma = opts.gamma;
  model.seed = opts.seed;
  return model;
}

}  // namespace

FactorModel train_mf(const RatingsDataset& train, const TrainOptions& opts,
                     const StepObserver* observer) {
  if (train.empty()) throw ValidateError("train_mf: empty training set");
  FactorModel model = make_model(Algorithm::mf, train.user_count(), train.item_count(), opts);
  Rng rng(opts.seed);
  init_factors(model, rng);
  sgd_squared_loss(model, train, opts.lambda, opts.iterations, 0, rng, observer);
  model.iterations = opts.iterations;
  return model;
}

FactorModel train_zeromat(std::size_t m, std::size_t n, const TrainOptions& opts,
                          const StepObserver* observer) {
  FactorModel model = make_model(Algorithm::zeromat, m, n, opts);
  Rng rng(opts.seed);
  init_factors(model, rng);
  sgd_rating_free(model, opts.iterations, 0, rng, observer);
  model.iterations = opts.iterations;
  return model;
}

FactorModel train_dotmat(const RatingsDataset& train, const TrainOptions& opts,
                         const StepObserver* observer) {
  if (train.empty()) throw ValidateError("train_dotmat: empty training set");
  FactorModel model =
      make_model(Algorithm::dotmat, train.user_count(), train.item_count(), opts);
  Rng rng(opts.seed);
  init_factors(model, rng);
  sgd_power_loss(model, train, opts.iterations, 0, rng, observer);
  model.iterations = opts.iterations;
  return model;
}

FactorModel train_dotmat_hybrid(const RatingsDataset& train, const TrainOptions& opts,
                                std::size_t iters_pre, std::size_t iters_main,
                                const StepObserver* observer) {
  if (train.empty()) throw ValidateError("train_dotmat_hybrid: empty training set");
  FactorModel model =
      make_model(Algorithm::dotmat_hybrid, train.user_count(), train.item_count(), opts);
  Rng rng(opts.seed);
  init_factors(model, rng);
  sgd_power_loss(model, train, iters_pre, 0, rng, observer);
  sgd_squared_loss(model, train, opts.lambda, iters_main, iters_pre, rng, observer);
  model.iterations = iters_pre + iters_main;
  if (iters_main == 0) model.algorithm = Algorithm::dotmat;
  if (iters_pre == 0) model.algorithm = Algorithm::mf;
  return model;
}

DotRange model_dot_range(const FactorModel& model) {
  constexpr std::size_t kExactLimit = 4000000;
  DotRange range;
  const std::size_t total = model.m * model.n;
  bool first = true;
  auto feed = [&](double d) {
    if (first) {
      range.lo = range.hi = d;
      first = false;
    } else {
      range.lo = std::min(range.lo, d);
      range.hi = std::max(range.hi, d);
    }
  };
  if (total <= kExactLimit) {
    for (std::size_t i = 0; i < model.m; ++i)
      for (std::size_t j = 0; j < model.n; ++j) feed(model.dot(i, j));
  } else {
    Rng rng(model.seed ^ 0x5ca1ab1eULL);
    for (std::size_t s = 0; s < kExactLimit; ++s)
      feed(model.dot(rng.bounded(model.m), rng.bounded(model.n)));
  }
  return range;
}

std::string to_model_json(const FactorModel& model) {
  std::string out = "{\n";
  out += "  \"algorithm\": \"" + algorithm_name(model.algorithm) + "\",\n";
  out += "  \"k\": " + std::to_string(model.k) + ",\n";
  out += "  \"gamma\": " + format_double(model.gamma, 17) + ",\n";
  out += "  \"seed\": " + std::to_string(model.seed) + ",\n";
  out += "  \"iterations\": " + std::to_string(model.iterations) + ",\n";
  auto dump_matrix = [&](const char* name, const std::vector<double>& values) {
    out += "  \"";
    out += name;
    out += "\": [";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_double(values[i], 17);
    }
    out += "]";
  };
  dump_matrix("U", model.u);
  out += ",\n";
  dump_matrix("V", model.v);
  out += "\n}\n";
  return out;
}

void write_model_json(const FactorModel& model, const std::string& path) {
  write_file(path, to_model_json(model));
}

FactorModel parse_model_json(const std::string& content) {
  nlohmann::json j = nlohmann::json::parse(content, nullptr, false);
  if (j.is_discarded()) throw ParseError("model file: invalid JSON");
  try {
    FactorModel model;
    model.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    model.k = j.at("k").get<std::size_t>();
    model.gamma = j.at("gamma").get<double>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.iterations = j.at("iterations").get<std::size_t>();
    model.u = j.at("U").get<std::vector<double>>();
    model.v = j.at("V").get<std::vector<double>>();
    if (model.k == 0 || model.u.size() % model.k != 0 || model.v.size() % model.k != 0)
      throw ParseError("model file: factor sizes not divisible by k");
    model.m = model.u.size() / model.k;
    model.n = model.v.size() / model.k;
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

FactorModel read_model_json(const std::string& path) {
  return parse_model_json(read_file(path));
}

}  // namespace recsys
