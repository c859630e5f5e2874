#include "cubesum/searcher.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"
#include "cubesum/verifier.hpp"

namespace cubesum {

namespace {

using Tuple = std::vector<int>;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                       : static_cast<std::uint64_t>(p);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                          : a + b;
}

// Number of size-k multisets drawn from m items, saturating.
std::uint64_t multichoose(std::uint64_t m, std::uint64_t k) {
  if (k == 0) return 1;
  if (m == 0) return 0;
  // C(m + k - 1, k), built incrementally so every partial product is exact.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (m - 1 + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

bool pairs_off(const Tuple& leading) {
  std::map<int, int> balance;
  for (int a : leading) {
    if (a > 0) ++balance[a];
    if (a < 0) --balance[-a];
  }
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

class Enumerator {
 public:
  explicit Enumerator(const SearchSpace& space)
      : bound_(static_cast<int>(space.coeff_bound)),
        degree_(space.max_degree),
        arity_(space.num_cubes),
        width_(3 * space.max_degree + 1) {
    const std::uint64_t base = 2 * space.coeff_bound + 1;
    std::uint64_t lower = 1;
    for (unsigned i = 0; i < degree_; ++i) lower = saturating_mul(lower, base);
    const std::uint64_t total = saturating_mul(lower, base);
    if (total > (1u << 26)) throw BudgetExceeded(total, 1u << 26);
    lower_count_ = static_cast<std::uint32_t>(lower);
    poly_count_ = static_cast<std::uint32_t>(total);

    // |coefficient of a cube| <= ((D + 1) C)^3; keep the sums in int64.
    const long double per = static_cast<long double>(degree_ + 1) * bound_;
    const long double max_sum = per * per * per * arity_;
    if (max_sum > static_cast<long double>(1LL << 62)) {
      throw std::invalid_argument("coefficient bound too large for 64-bit cube expansion");
    }
    target_.assign(width_, 0);
    if (space.target.fits_slong_p() && abs(space.target) <= BigInt(static_cast<long>(max_sum))) {
      target_[0] = space.target.get_si();
    } else {
      unreachable_ = true;
    }

    cubes_.resize(static_cast<std::size_t>(poly_count_) * width_);
    std::vector<std::int64_t> coeffs(degree_ + 1);
    for (std::uint32_t idx = 0; idx < poly_count_; ++idx) {
      poly_coefficients(idx, coeffs);
      std::int64_t* cube = &cubes_[static_cast<std::size_t>(idx) * width_];
      std::vector<std::int64_t> square(2 * degree_ + 1, 0);
      for (unsigned i = 0; i <= degree_; ++i) {
        for (unsigned j = 0; j <= degree_; ++j) square[i + j] += coeffs[i] * coeffs[j];
      }
      for (unsigned i = 0; i <= 2 * degree_; ++i) {
        for (unsigned j = 0; j <= degree_; ++j) cube[i + j] += square[i] * coeffs[j];
      }
      lookup_.emplace(hash(cube), idx);
    }

    Tuple tuple;
    collect_tuples(space, tuple);
  }

  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }

  std::uint64_t count(const Tuple& tuple) const {
    std::uint64_t total = 1;
    std::size_t i = 0;
    while (i < tuple.size()) {
      std::size_t j = i;
      while (j < tuple.size() && tuple[j] == tuple[i]) ++j;
      const std::uint64_t k = j - i - (j == tuple.size() ? 1 : 0);
      total = saturating_mul(total, multichoose(lower_count_, k));
      i = j;
    }
    return unreachable_ ? 0 : total;
  }

  /// Visits every candidate of `tuple`; returns the number examined.
  template <typename OnHit>
  std::uint64_t run(const Tuple& tuple, OnHit&& on_hit) const {
    if (unreachable_) return 0;
    std::vector<std::uint32_t> chosen(arity_);
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(arity_) * width_, 0);
    std::vector<std::int64_t> need(width_);
    std::uint64_t examined = 0;

    auto visit = [&](auto&& self, unsigned k) -> void {
      if (k + 1 == arity_) {
        ++examined;
        const std::int64_t* acc = &prefix[static_cast<std::size_t>(k) * width_];
        for (unsigned w = 0; w < width_; ++w) need[w] = target_[w] - acc[w];
        const auto found = find(need);
        if (!found) return;
        const std::uint32_t last = *found;
        if (last < block_start(tuple[k]) || last >= block_end(tuple[k])) return;
        if (k > 0 && tuple[k] == tuple[k - 1] && last < chosen[k - 1]) return;
        chosen[k] = last;
        on_hit(chosen);
        return;
      }
      std::uint32_t start = block_start(tuple[k]);
      if (k > 0 && tuple[k] == tuple[k - 1]) start = chosen[k - 1];
      const std::int64_t* acc = &prefix[static_cast<std::size_t>(k) * width_];
      std::int64_t* next = &prefix[static_cast<std::size_t>(k + 1) * width_];
      for (std::uint32_t i = start; i < block_end(tuple[k]); ++i) {
        chosen[k] = i;
        const std::int64_t* cube = &cubes_[static_cast<std::size_t>(i) * width_];
        for (unsigned w = 0; w < width_; ++w) next[w] = acc[w] + cube[w];
        self(self, k + 1);
      }
    };
    visit(visit, 0);
    return examined;
  }

  Polynomial polynomial(std::uint32_t idx) const {
    std::vector<std::int64_t> coeffs(degree_ + 1);
    poly_coefficients(idx, coeffs);
    std::vector<Polynomial::RawTerm> terms;
    for (unsigned i = 0; i <= degree_; ++i) {
      if (coeffs[i] != 0) terms.push_back({{i}, BigInt(static_cast<long>(coeffs[i]))});
    }
    return Polynomial::from_terms({"t"}, std::move(terms));
  }

 private:
  // Index layout: (a + C) * lower_count + lower, where a is the t^D
  // coefficient and `lower` enumerates the t^0..t^(D-1) coefficients.
  void poly_coefficients(std::uint32_t idx, std::vector<std::int64_t>& out) const {
    const std::uint32_t base = 2 * static_cast<std::uint32_t>(bound_) + 1;
    out[degree_] = static_cast<std::int64_t>(idx / lower_count_) - bound_;
    std::uint32_t lower = idx % lower_count_;
    for (unsigned i = 0; i < degree_; ++i) {
      out[i] = static_cast<std::int64_t>(lower % base) - bound_;
      lower /= base;
    }
  }

  std::uint32_t block_start(int a) const { return static_cast<std::uint32_t>(a + bound_) * lower_count_; }
  std::uint32_t block_end(int a) const { return block_start(a) + lower_count_; }

  std::uint64_t hash(const std::int64_t* v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned w = 0; w < width_; ++w) {
      h ^= static_cast<std::uint64_t>(v[w]);
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return h;
  }

  std::optional<std::uint32_t> find(const std::vector<std::int64_t>& need) const {
    auto [lo, hi] = lookup_.equal_range(hash(need.data()));
    for (auto it = lo; it != hi; ++it) {
      const std::int64_t* cube = &cubes_[static_cast<std::size_t>(it->second) * width_];
      if (std::equal(need.begin(), need.end(), cube)) return it->second;
    }
    return std::nullopt;
  }

  void collect_tuples(const SearchSpace& space, Tuple& tuple) {
    if (tuple.size() == arity_) {
      BigInt top = 0;
      for (int a : tuple) top += BigInt(a) * a * a;
      const BigInt wanted = degree_ == 0 ? space.target : BigInt(0);
      if (top != wanted) return;
      if (space.symmetry == SymmetryMode::kPairCancellation && !pairs_off(tuple)) return;
      tuples_.push_back(tuple);
      return;
    }
    for (int a = tuple.empty() ? -bound_ : tuple.back(); a <= bound_; ++a) {
      tuple.push_back(a);
      collect_tuples(space, tuple);
      tuple.pop_back();
    }
  }

  int bound_;
  unsigned degree_;
  unsigned arity_;
  unsigned width_;
  std::uint32_t lower_count_ = 1;
  std::uint32_t poly_count_ = 0;
  bool unreachable_ = false;
  std::vector<std::int64_t> target_;
  std::vector<std::int64_t> cubes_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> lookup_;
  std::vector<Tuple> tuples_;
};

void validate_shard(Shard shard) {
  if (shard.total == 0 || shard.index >= shard.total) {
    throw std::invalid_argument("shard index must satisfy 0 <= index < total");
  }
}

std::string symmetry_name(SymmetryMode mode) {
  return mode == SymmetryMode::kNone ? "none" : "pair_cancellation";
}

nlohmann::json found_json(const FoundIdentity& f) {
  nlohmann::json j = to_json(f.representation);
  j["degenerate"] = f.degenerate;
  return j;
}

FoundIdentity found_from_json(const nlohmann::json& j) {
  FoundIdentity f;
  f.representation = identity_from_json(j).representation;
  f.degenerate = j.value("degenerate", false);
  return f;
}

struct Checkpoint {
  std::optional<Tuple> last_tuple;
  std::uint64_t states_examined = 0;
  std::vector<FoundIdentity> found;
};

nlohmann::json checkpoint_json(const SearchSpace& space, Shard shard, const Checkpoint& cp,
                               bool complete) {
  nlohmann::json found = nlohmann::json::array();
  for (const auto& f : cp.found) found.push_back(found_json(f));
  return {{"space", to_json(space)},
          {"shard", {{"index", shard.index}, {"total", shard.total}}},
          {"last_tuple", cp.last_tuple ? nlohmann::json(*cp.last_tuple) : nlohmann::json(nullptr)},
          {"states_examined", cp.states_examined},
          {"complete", complete},
          {"found", std::move(found)}};
}

void write_checkpoint(const std::filesystem::path& path, const nlohmann::json& j) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path, const SearchSpace& space,
                                          Shard shard) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto j = parse_json_text(text);
  try {
    if (search_space_from_json(j.at("space")) != space ||
        j.at("shard").at("index").get<unsigned>() != shard.index ||
        j.at("shard").at("total").get<unsigned>() != shard.total) {
      throw std::invalid_argument("checkpoint " + path.string() + " belongs to a different search");
    }
    Checkpoint cp;
    if (!j.at("last_tuple").is_null()) cp.last_tuple = j.at("last_tuple").get<Tuple>();
    cp.states_examined = j.at("states_examined").get<std::uint64_t>();
    for (const auto& f : j.at("found")) cp.found.push_back(found_from_json(f));
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what(), 0, 0);
  }
}

void check_sound(const Representation& r) {
  if (!verify(r).ok) throw std::logic_error("search emitted a non-identity: " + to_text(r));
}

}  // namespace

void SearchSpace::validate() const {
  if (num_cubes < 3 || num_cubes > 5) throw std::invalid_argument("num_cubes must be 3, 4 or 5");
  if (coeff_bound < 1) throw std::invalid_argument("coeff_bound must be at least 1");
}

std::uint64_t planned_states(const SearchSpace& space, Shard shard) {
  space.validate();
  validate_shard(shard);
  const Enumerator e(space);
  std::uint64_t total = 0;
  for (std::size_t i = shard.index; i < e.tuples().size(); i += shard.total) {
    total = saturating_add(total, e.count(e.tuples()[i]));
  }
  return total;
}

SearchResult search(const SearchSpace& space, const SearchOptions& options) {
  return search_shard(space, Shard{}, options);
}

SearchResult search_shard(const SearchSpace& space, Shard shard, const SearchOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  space.validate();
  validate_shard(shard);
  const Enumerator e(space);

  std::uint64_t planned = 0;
  for (std::size_t i = shard.index; i < e.tuples().size(); i += shard.total) {
    planned = saturating_add(planned, e.count(e.tuples()[i]));
  }
  if (planned > options.budget) throw BudgetExceeded(planned, options.budget);

  Checkpoint cp;
  if (options.checkpoint) {
    if (auto loaded = read_checkpoint(*options.checkpoint, space, shard)) cp = std::move(*loaded);
  }
  std::map<std::string, FoundIdentity> found;
  for (auto& f : cp.found) {
    check_sound(f.representation);
    found.emplace(to_text(f.representation), std::move(f));
  }

  const Polynomial target = Polynomial::constant(space.target);
  auto last_save = std::chrono::steady_clock::now();
  auto save = [&](bool complete) {
    cp.found.clear();
    for (const auto& [key, f] : found) cp.found.push_back(f);
    write_checkpoint(*options.checkpoint, checkpoint_json(space, shard, cp, complete));
    last_save = std::chrono::steady_clock::now();
  };

  bool stopped = false;
  for (std::size_t i = shard.index; i < e.tuples().size(); i += shard.total) {
    const Tuple& tuple = e.tuples()[i];
    if (cp.last_tuple && tuple <= *cp.last_tuple) continue;
    cp.states_examined += e.run(tuple, [&](const std::vector<std::uint32_t>& chosen) {
      std::vector<Polynomial> cubes;
      cubes.reserve(chosen.size());
      bool degenerate = false;
      for (auto idx : chosen) {
        cubes.push_back(e.polynomial(idx));
        degenerate = degenerate || cubes.back().is_zero();
      }
      Representation raw(target, std::move(cubes));
      check_sound(raw);
      Representation normal = normalize_representation(raw);
      auto key = to_text(normal);
      found.try_emplace(std::move(key), FoundIdentity{std::move(normal), degenerate});
    });
    cp.last_tuple = tuple;
    if (options.checkpoint &&
        std::chrono::steady_clock::now() - last_save >= options.checkpoint_interval) {
      save(false);
    }
    if (options.stop && options.stop()) {
      stopped = true;
      break;
    }
  }
  if (options.checkpoint) save(!stopped);

  SearchResult result;
  result.complete = !stopped;
  result.states_examined = cp.states_examined;
  for (auto& [key, f] : found) result.found.push_back(std::move(f));
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

SearchResult search_parallel(const SearchSpace& space, unsigned jobs, const SearchOptions& options) {
  if (jobs <= 1) return search(space, options);
  SearchOptions shard_options = options;
  shard_options.checkpoint.reset();
  std::vector<std::future<SearchResult>> futures;
  for (unsigned i = 0; i < jobs; ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      return search_shard(space, Shard{i, jobs}, shard_options);
    }));
  }
  std::vector<SearchResult> parts;
  for (auto& f : futures) parts.push_back(f.get());
  return merge_results(parts);
}

SearchResult merge_results(std::span<const SearchResult> parts) {
  std::map<std::string, FoundIdentity> found;
  SearchResult out;
  for (const auto& part : parts) {
    out.states_examined += part.states_examined;
    out.elapsed += part.elapsed;
    out.complete = out.complete && part.complete;
    for (const auto& f : part.found) found.try_emplace(to_text(f.representation), f);
  }
  for (auto& [key, f] : found) out.found.push_back(std::move(f));
  return out;
}

Representation normalize_representation(const Representation& r) {
  const Polynomial t = Polynomial::variable("t");
  std::optional<std::pair<std::string, Representation>> best;
  for (int sign : {1, -1}) {
    Representation cur = sign == 1 ? r : substitute(r, Bindings{{"t", -t}});
    std::uint32_t d = 0;
    for (const auto& c : cur.cubes()) d = std::max(d, c.degree_in("t"));
    if (d > 0) {
      // Shift so that the t^(2d-1) coefficient of the sum of squares, over
      // 2d times its leading coefficient, lands in (-1, 0].
      Polynomial squares;
      for (const auto& c : cur.cubes()) squares += c * c;
      const BigInt lead = squares.coefficient("t", 2 * d).constant_term();
      const BigInt next = squares.coefficient("t", 2 * d - 1).constant_term();
      BigInt shift;
      const BigInt numerator = -next;
      const BigInt denominator = lead * (2 * d);
      mpz_fdiv_q(shift.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
      if (shift != 0) cur = substitute(cur, Bindings{{"t", t + Polynomial::constant(shift)}});
    }
    auto text = to_text(cur);
    if (!best || text < best->first) best.emplace(std::move(text), std::move(cur));
  }
  return best->second;
}

bool has_pair_cancellation_shape(const Representation& r, unsigned max_degree) {
  Tuple leading;
  for (const auto& c : r.cubes()) {
    const BigInt a = c.coefficient("t", max_degree).constant_term();
    if (!a.fits_sint_p()) return false;
    leading.push_back(static_cast<int>(a.get_si()));
  }
  return pairs_off(leading);
}

nlohmann::json to_json(const SearchSpace& space) {
  return {{"target", space.target.get_str()},
          {"num_cubes", space.num_cubes},
          {"max_degree", space.max_degree},
          {"coeff_bound", space.coeff_bound},
          {"symmetry", symmetry_name(space.symmetry)}};
}

SearchSpace search_space_from_json(const nlohmann::json& j) {
  SearchSpace s;
  const auto& target = j.at("target");
  s.target = BigInt(target.is_string() ? target.get<std::string>() : target.dump());
  s.num_cubes = j.at("num_cubes").get<unsigned>();
  s.max_degree = j.at("max_degree").get<unsigned>();
  s.coeff_bound = j.at("coeff_bound").get<unsigned>();
  const auto sym = j.value("symmetry", std::string("none"));
  if (sym == "none") {
    s.symmetry = SymmetryMode::kNone;
  } else if (sym == "pair_cancellation") {
    s.symmetry = SymmetryMode::kPairCancellation;
  } else {
    throw std::invalid_argument("unknown symmetry mode '" + sym + "'");
  }
  return s;
}

nlohmann::json to_json(const SearchResult& result, bool include_elapsed) {
  nlohmann::json found = nlohmann::json::array();
  for (const auto& f : result.found) found.push_back(found_json(f));
  nlohmann::json j = {{"states_examined", result.states_examined},
                      {"complete", result.complete},
                      {"found", std::move(found)}};
  if (include_elapsed) {
    j["elapsed_ms"] = std::chrono::duration<double, std::milli>(result.elapsed).count();
  }
  return j;
}

}  // namespace cubesum
