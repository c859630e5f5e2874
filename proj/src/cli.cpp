#include "cubesum/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cubesum/catalog.hpp"
#include "cubesum/derivation.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/poly_io.hpp"
#include "cubesum/searcher.hpp"
#include "cubesum/verifier.hpp"

namespace cubesum::cli {

namespace {

constexpr long kMaxTrialBound = 10'000'000;

// Smallest r >= 0 with r^k >= |n|.
BigInt ceil_root(const BigInt& n, unsigned k) {
  const BigInt a = abs(n);
  BigInt r;
  const bool exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) != 0;
  return exact ? r : BigInt(r + 1);
}

struct Candidate {
  BigInt p;
  BigInt q;
};

// Smallest |p| + |q|, ties to the lexicographically largest (p, q).
bool better(const Candidate& a, const Candidate& b) {
  const BigInt wa = abs(a.p) + abs(a.q);
  const BigInt wb = abs(b.p) + abs(b.q);
  if (wa != wb) return wa < wb;
  if (a.p != b.p) return a.p > b.p;
  return a.q > b.q;
}

long checked_bound(const BigInt& bound) {
  if (bound > kMaxTrialBound) {
    throw BudgetExceeded(bound.fits_ulong_p() ? bound.get_ui() : UINT64_MAX, kMaxTrialBound);
  }
  return bound.get_si();
}

std::optional<Candidate> match_cube_sum(const BigInt& n, long bound) {
  std::optional<Candidate> best;
  BigInt rest;
  BigInt q;
  for (long p = -bound; p <= bound; ++p) {
    const BigInt bp(p);
    rest = n - bp * bp * bp;
    if (mpz_root(q.get_mpz_t(), rest.get_mpz_t(), 3) == 0) continue;
    if (abs(q) > bound) continue;
    Candidate c{bp, q};
    if (!best || better(c, *best)) best = c;
  }
  return best;
}

std::optional<Candidate> match_sixth_difference(const BigInt& n, long bound) {
  if (!mpz_even_p(n.get_mpz_t())) return std::nullopt;
  const BigInt half = n / 2;
  std::optional<Candidate> best;
  BigInt rest;
  BigInt q;
  for (long p = -bound; p <= bound; ++p) {
    BigInt p6;
    mpz_pow_ui(p6.get_mpz_t(), BigInt(p).get_mpz_t(), 6);
    rest = p6 - half;
    if (rest < 0 || mpz_root(q.get_mpz_t(), rest.get_mpz_t(), 6) == 0) continue;
    if (q > bound) continue;
    for (const BigInt& signed_q : {q, BigInt(-q)}) {
      Candidate c{BigInt(p), signed_q};
      if (!best || better(c, *best)) best = c;
    }
  }
  return best;
}

enum class Format { kText, kJson, kLatex };

struct Globals {
  Format format = Format::kText;
  long long seed = 0;
};

void print_record(std::ostream& out, Format format, const IdentityRecord& record) {
  switch (format) {
    case Format::kText:
      out << to_text(record.representation) << '\n';
      break;
    case Format::kJson:
      out << to_json(record).dump(2) << '\n';
      break;
    case Format::kLatex:
      out << to_latex(record.representation) << '\n';
      break;
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

BigInt parse_integer(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("expected name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

Shard parse_shard(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("shard must look like i/k");
  Shard s;
  try {
    s.index = static_cast<unsigned>(std::stoul(text.substr(0, slash)));
    s.total = static_cast<unsigned>(std::stoul(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("shard must look like i/k");
  }
  if (s.total == 0 || s.index >= s.total) throw std::invalid_argument("shard must satisfy 0 <= i < k");
  return s;
}

std::uint64_t budget_from_env() {
  const char* env = std::getenv("CUBESUM_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultSearchBudget;
  try {
    return std::stoull(env);
  } catch (const std::logic_error&) {
    throw std::invalid_argument(std::string("bad CUBESUM_BUDGET '") + env + "'");
  }
}

int cmd_represent(std::ostream& out, const Globals& g, const std::string& n, unsigned cubes) {
  print_record(out, g.format, represent(parse_integer(n), cubes));
  return kOk;
}

int cmd_verify(std::ostream& out, const Globals& g, const std::string& path) {
  const auto record = identity_from_json(parse_json_text(read_input(path)));
  const auto& rep = record.representation;
  VerificationReport report = verify(rep);
  const auto points = grid_points(rep.variables(), 2, 125);
  report.spot_checks = spot_check(rep, points).spot_checks;
  if (g.format == Format::kJson) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_text(report) << '\n';
  }
  return report.ok ? kOk : kVerificationFailed;
}

int cmd_derive(std::ostream& out, const Globals& g, const std::string& family, bool show_steps,
               int j, std::optional<long long> shift) {
  const Derivation d = derive(family, j, shift);
  IdentityRecord record{family, {}, d.result};
  if (family == "five_residue") {
    record.params["j"] = std::to_string(j);
    record.params["shift"] = std::to_string(shift.value_or(default_residue_shift(j)));
  }
  switch (g.format) {
    case Format::kText:
      // The last explained step already shows the identity.
      out << (show_steps ? explain(d.trace) : to_text(d.result) + "\n");
      break;
    case Format::kJson: {
      auto js = to_json(record);
      if (show_steps) js["trace"] = to_json(d.trace);
      out << js.dump(2) << '\n';
      break;
    }
    case Format::kLatex:
      if (show_steps) {
        std::istringstream lines(explain(d.trace));
        for (std::string line; std::getline(lines, line);) out << "% " << line << '\n';
      }
      out << to_latex(d.result) << '\n';
      break;
  }
  return kOk;
}

int cmd_catalog_list(std::ostream& out, const Globals& g) {
  struct Row {
    std::string id;
    std::string kind;
    std::size_t arity;
    std::vector<std::string> params;
  };
  std::vector<Row> rows;
  for (const auto& id : fixed_identity_ids()) rows.push_back({id, "fixed", catalog_fixed(id).arity(), {}});
  for (const auto& f : identity_families()) rows.push_back({f.id, "family", f.arity, f.symbolic_params});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });

  if (g.format == Format::kJson) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"id", r.id},
                   {"kind", r.kind},
                   {"arity", r.arity},
                   {"params", r.params},
                   {"description", describe_identity(r.id)}});
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  for (const auto& r : rows) {
    out << r.id << std::string(r.id.size() < 22 ? 22 - r.id.size() : 1, ' ') << r.kind
        << (r.kind == "fixed" ? "   " : "  ") << r.arity << "  " << describe_identity(r.id) << '\n';
  }
  return kOk;
}

int cmd_catalog_show(std::ostream& out, const Globals& g, const std::string& id,
                     const std::vector<std::string>& params) {
  Bindings bindings;
  for (const auto& p : params) {
    auto [name, value] = split_assignment(p);
    bindings[name] = parse_polynomial(value);
  }
  print_record(out, g.format, catalog_entry(id, bindings));
  return kOk;
}

struct SearchArgs {
  std::string target;
  unsigned cubes = 4;
  unsigned max_degree = 2;
  unsigned coeff_bound = 1;
  std::string symmetry = "none";
  std::string shard;
  std::string out_path;
  std::string checkpoint;
  unsigned jobs = 1;
};

volatile std::sig_atomic_t g_interrupted = 0;

class InterruptGuard {
 public:
  InterruptGuard() {
    g_interrupted = 0;
    previous_ = std::signal(SIGINT, [](int) { g_interrupted = 1; });
  }
  ~InterruptGuard() { std::signal(SIGINT, previous_); }
  InterruptGuard(const InterruptGuard&) = delete;
  InterruptGuard& operator=(const InterruptGuard&) = delete;

 private:
  void (*previous_)(int);
};

int cmd_search(std::ostream& out, const Globals& g, const SearchArgs& a) {
  SearchSpace space;
  space.target = parse_integer(a.target);
  space.num_cubes = a.cubes;
  space.max_degree = a.max_degree;
  space.coeff_bound = a.coeff_bound;
  if (a.symmetry == "pair" || a.symmetry == "pair_cancellation") {
    space.symmetry = SymmetryMode::kPairCancellation;
  } else if (a.symmetry != "none") {
    throw std::invalid_argument("symmetry must be none or pair");
  }
  space.validate();

  SearchOptions options;
  options.budget = budget_from_env();
  std::optional<InterruptGuard> guard;
  if (!a.checkpoint.empty()) {
    options.checkpoint = a.checkpoint;
    // Ctrl-C saves progress instead of losing it.
    guard.emplace();
    options.stop = [] { return g_interrupted != 0; };
  }

  Shard shard;
  SearchResult result;
  if (!a.shard.empty()) {
    shard = parse_shard(a.shard);
    result = search_shard(space, shard, options);
  } else {
    if (a.jobs > 1 && options.checkpoint) {
      throw std::invalid_argument("--checkpoint needs a single shard; combine with --shard instead of --jobs");
    }
    result = search_parallel(space, a.jobs, options);
  }

  nlohmann::json j = to_json(result);
  j["space"] = to_json(space);
  j["shard"] = {{"index", shard.index}, {"total", shard.total}};
  if (!a.out_path.empty()) {
    std::ofstream file(a.out_path);
    if (!file) throw std::invalid_argument("cannot write " + a.out_path);
    file << j.dump(2) << '\n';
  }

  switch (g.format) {
    case Format::kJson:
      out << j.dump(2) << '\n';
      break;
    case Format::kText:
    case Format::kLatex:
      if (!result.complete) out << "interrupted; rerun with the same --checkpoint to resume\n";
      out << "states examined: " << result.states_examined << '\n'
          << "found: " << result.found.size() << '\n';
      for (const auto& f : result.found) {
        out << (g.format == Format::kText ? to_text(f.representation) : to_latex(f.representation))
            << (f.degenerate ? "  [degenerate]" : "") << '\n';
      }
      break;
  }
  return kOk;
}

int cmd_eval(std::ostream& out, const Globals& g, const std::string& expr,
             const std::vector<std::string>& assignments) {
  Point point;
  for (const auto& a : assignments) {
    auto [name, value] = split_assignment(a);
    point[name] = parse_integer(value);
  }
  const BigInt value = evaluate(parse_polynomial(expr), point);
  if (g.format == Format::kJson) {
    out << nlohmann::json{{"value", value.get_str()}}.dump() << '\n';
  } else {
    out << value.get_str() << '\n';
  }
  return kOk;
}

}  // namespace

IdentityRecord represent(const BigInt& n, unsigned cubes) {
  IdentityRecord record;
  if (cubes == 5) {
    BigInt j;
    mpz_fdiv_r_ui(j.get_mpz_t(), n.get_mpz_t(), 6);
    const BigInt m = (n - j) / 6;
    const int residue = static_cast<int>(j.get_si());
    record.id = "five_residue";
    record.params = {{"j", j.get_str()}, {"m", m.get_str()}};
    record.representation = five_cubes_residue(residue, Polynomial::constant(m));
  } else if (cubes == 4) {
    const long sum_bound = checked_bound(ceil_root(n, 3) + 1);
    const long sixth_bound = checked_bound(ceil_root(BigInt(n / 2), 6) + 1);
    if (auto c = match_cube_sum(n, sum_bound)) {
      record.id = "four_pq";
      record.params = {{"p", c->p.get_str()}, {"q", c->q.get_str()}};
      record.representation = four_cubes_sum_pq(Polynomial::constant(c->p), Polynomial::constant(c->q));
    } else if (auto c6 = match_sixth_difference(n, sixth_bound)) {
      record.id = "four_even";
      record.params = {{"p", c6->p.get_str()}, {"q", c6->q.get_str()}};
      record.representation =
          four_cubes_two_diff(Polynomial::constant(c6->p), Polynomial::constant(c6->q));
    } else {
      throw NoFourCubeFamilyMatch(
          n.get_str() + " is neither p^3 + q^3 with |p|, |q| <= " + std::to_string(sum_bound) +
          " nor 2(p^6 - q^6) with |p|, |q| <= " + std::to_string(sixth_bound) +
          "; try `cubesum search`");
    }
  } else {
    throw std::invalid_argument("cubes must be 4 or 5");
  }
  if (!verify(record.representation).ok) {
    throw std::logic_error("constructed representation does not verify");
  }
  return record;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of cubes of integer polynomials: catalog, derivations, verification, search",
               "cubesum"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Accepted for interface stability; enumeration is deterministic");

  std::function<int()> action;

  auto* rep = app.add_subcommand("represent", "Represent an integer as four or five cubes");
  std::string rep_n;
  unsigned rep_cubes = 5;
  rep->add_option("n", rep_n, "Integer to represent")->required();
  rep->add_option("--cubes", rep_cubes, "Number of cubes")->check(CLI::IsMember({4u, 5u}))->capture_default_str();
  rep->callback([&] { action = [&] { return cmd_represent(out, g, rep_n, rep_cubes); }; });

  auto* ver = app.add_subcommand("verify", "Verify an identity JSON file ('-' for stdin)");
  std::string ver_path;
  ver->add_option("file", ver_path, "Identity JSON")->required();
  ver->callback([&] { action = [&] { return cmd_verify(out, g, ver_path); }; });

  auto* der = app.add_subcommand("derive", "Re-derive an identity family from its ansatz");
  std::string der_family;
  bool der_explain = false;
  int der_j = 0;
  std::optional<long long> der_shift;
  der->add_option("family", der_family, "four_pq, four_even, one_bivariate, two_trivariate or five_residue")
      ->required();
  der->add_flag("--explain", der_explain, "Print the numbered derivation steps");
  der->add_option("--j", der_j, "Residue for five_residue")->check(CLI::Range(0, 5));
  der->add_option("--shift", der_shift, "Shift for five_residue (must equal j mod 6)");
  der->callback([&] {
    action = [&] { return cmd_derive(out, g, der_family, der_explain, der_j, der_shift); };
  });

  auto* cat = app.add_subcommand("catalog", "List or show catalog identities");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List fixed identities and families");
  cat_list->callback([&] { action = [&] { return cmd_catalog_list(out, g); }; });
  auto* cat_show = cat->add_subcommand("show", "Show one identity");
  std::string show_id;
  std::vector<std::string> show_params;
  cat_show->add_option("id", show_id, "Identity or family id")->required();
  cat_show->add_option("--param", show_params, "Family parameter, e.g. p=2");
  cat_show->callback([&] { action = [&] { return cmd_catalog_show(out, g, show_id, show_params); }; });

  auto* sea = app.add_subcommand("search", "Exhaustive search for polynomial cube identities");
  SearchArgs sa;
  sea->add_option("n", sa.target, "Target integer")->required();
  sea->add_option("--cubes", sa.cubes, "Number of cubes (3-5)")->capture_default_str();
  sea->add_option("--max-degree", sa.max_degree, "Degree bound per cube")->capture_default_str();
  sea->add_option("--coeff-bound", sa.coeff_bound, "Coefficient bound")->capture_default_str();
  sea->add_option("--symmetry", sa.symmetry, "none or pair")->capture_default_str();
  sea->add_option("--shard", sa.shard, "Run shard i of k, written i/k");
  sea->add_option("--out", sa.out_path, "Write the JSON result here");
  sea->add_option("--checkpoint", sa.checkpoint, "Progress file, resumed if present");
  sea->add_option("--jobs", sa.jobs, "Run this many shards in parallel and merge")->capture_default_str();
  sea->callback([&] { action = [&] { return cmd_search(out, g, sa); }; });

  auto* ev = app.add_subcommand("eval", "Evaluate a polynomial at an integer point");
  std::string ev_expr;
  std::vector<std::string> ev_point;
  ev->add_option("expr", ev_expr, "Polynomial, e.g. 9*t^4")->required();
  ev->add_option("point", ev_point, "Assignments such as t=3");
  ev->callback([&] { action = [&] { return cmd_eval(out, g, ev_expr, ev_point); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  g.format = format == "json" ? Format::kJson : format == "latex" ? Format::kLatex : Format::kText;

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBoundExceeded;
  } catch (const NoFourCubeFamilyMatch& e) {
    err << "error: " << e.what() << '\n';
    return kBoundExceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace cubesum::cli
