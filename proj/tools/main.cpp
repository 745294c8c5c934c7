#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <cdlevel/brown.hpp>
#include <cdlevel/errors.hpp>
#include <cdlevel/level.hpp>
#include <cdlevel/quadform.hpp>
#include <cdlevel/sampling.hpp>
#include <cdlevel/serialize.hpp>

using namespace cdlevel;

namespace {

// Default budget, overridable by CDLEVEL_BUDGET ("height=10,degree=2,
// trials=10000,seed=0") and then by the command-line flags.
SearchBudget env_budget() {
  SearchBudget b;
  const char* env = std::getenv("CDLEVEL_BUDGET");
  if (!env) return b;
  std::string s(env);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    if (eq != std::string::npos) {
      std::string key = item.substr(0, eq);
      long long value = std::stoll(item.substr(eq + 1));
      if (key == "height") b.height = value;
      else if (key == "degree") b.degree = static_cast<int>(value);
      else if (key == "trials") b.trials = value;
      else if (key == "seed") b.seed = static_cast<std::uint64_t>(value);
      else throw CLI::ValidationError("CDLEVEL_BUDGET", "unknown key '" + key + "'");
    }
    pos = end + 1;
  }
  return b;
}

void add_budget_flags(CLI::App* cmd, SearchBudget& b) {
  cmd->add_option("--height", b.height, "height bound for rational searches");
  cmd->add_option("--degree", b.degree, "degree bound per tower variable");
  cmd->add_option("--trials", b.trials, "randomized trial count");
  cmd->add_option("--seed", b.seed, "random seed");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    const auto a = item.find_first_not_of(" \t");
    if (a != std::string::npos) {
      const auto b = item.find_last_not_of(" \t");
      parts.push_back(item.substr(a, b - a + 1));
    }
    pos = end + 1;
  }
  return parts;
}

std::vector<Element> parse_list(const Field& f, const std::string& text) {
  std::vector<Element> out;
  for (const auto& item : split_list(text)) out.push_back(f.parse(item));
  return out;
}

AlgebraPtr make_algebra(const std::string& field_desc, const std::string& alphas) {
  FieldPtr f = Field::parse_descriptor(field_desc);
  return algebra_make(f, parse_list(*f, alphas));
}

int emit(const Json& j) {
  std::cout << j.dump(2) << "\n";
  return 0;
}

int emit_text(const std::string& s) {
  std::cout << s;
  if (s.empty() || s.back() != '\n') std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Cayley-Dickson algebras, quadratic forms and levels"};
  app.require_subcommand(1);
  int exit_code = 0;

  SearchBudget budget;
  try {
    budget = env_budget();
  } catch (const std::exception& e) {
    std::cerr << "error: bad CDLEVEL_BUDGET: " << e.what() << "\n";
    return 1;
  }

  std::string field_desc, base_desc, alphas, coeffs, gens, format = "json";
  std::string a3, b3, c3, d3;
  std::string primes_list = "3,7,11";
  int tmax = 2, levels = 1, jobs = 1;
  std::int64_t random_quadruples = 0;

  // ---- table
  auto* table = app.add_subcommand("table", "multiplication table");
  table->add_option("--field", field_desc, "field descriptor")->required();
  table->add_option("--alphas", alphas, "doubling parameters, comma separated");
  table->add_option("--format", format, "json or text");
  table->callback([&] {
    auto desc = make_algebra(field_desc, alphas);
    exit_code = format == "text" ? emit_text(table_text(desc))
                                 : emit(table_json(desc));
  });

  // ---- forms trace|pure|norm
  auto* forms = app.add_subcommand("forms", "trace, pure trace and norm forms");
  forms->require_subcommand(1);
  for (const char* which : {"trace", "pure", "norm"}) {
    auto* sub = forms->add_subcommand(which);
    sub->add_option("--field", field_desc)->required();
    sub->add_option("--alphas", alphas);
    sub->add_option("--format", format);
    sub->callback([&, which] {
      auto desc = make_algebra(field_desc, alphas);
      DiagonalForm f = std::string(which) == "trace"  ? trace_form(desc)
                       : std::string(which) == "pure" ? pure_trace_form(desc)
                                                      : norm_form(desc);
      exit_code = format == "text" ? emit_text(form_text(f)) : emit(form_json(f));
    });
  }

  // ---- pfister
  auto* pf = app.add_subcommand("pfister", "expand a Pfister form");
  pf->add_option("--field", field_desc)->required();
  pf->add_option("--gens", gens, "generators, comma separated")->required();
  pf->add_option("--format", format);
  pf->callback([&] {
    FieldPtr f = Field::parse_descriptor(field_desc);
    DiagonalForm form = pfister_expand(f, parse_list(*f, gens));
    exit_code = format == "text" ? emit_text(form_text(form)) : emit(form_json(form));
  });

  // ---- isotropy
  auto* iso = app.add_subcommand("isotropy", "isotropy verdict with witness");
  iso->add_option("--field", field_desc)->required();
  iso->add_option("--coeffs", coeffs, "diagonal coefficients")->required();
  add_budget_flags(iso, budget);
  iso->callback([&] {
    FieldPtr f = Field::parse_descriptor(field_desc);
    DiagonalForm form = form_make(f, parse_list(*f, coeffs));
    IsotropyResult r = isotropy(form, budget);
    emit(isotropy_json(form, r));
    exit_code = r.unknown() ? 2 : 0;
  });

  // ---- level field | level algebra, sublevel algebra
  auto* level_cmd = app.add_subcommand("level", "level of a field or algebra");
  level_cmd->require_subcommand(1);
  auto* level_field = level_cmd->add_subcommand("field");
  level_field->add_option("--field", field_desc)->required();
  level_field->callback([&] {
    exit_code = emit(level_json(field_level(Field::parse_descriptor(field_desc))));
  });
  auto* level_alg = level_cmd->add_subcommand("algebra");
  level_alg->add_option("--field", field_desc)->required();
  level_alg->add_option("--alphas", alphas);
  add_budget_flags(level_alg, budget);
  level_alg->callback([&] {
    LevelValue v = algebra_level(make_algebra(field_desc, alphas), budget);
    emit(level_json(v));
    exit_code = v.kind == LevelValue::Kind::Range ? 2 : 0;
  });

  auto* sublevel_cmd = app.add_subcommand("sublevel", "sublevel of an algebra");
  sublevel_cmd->require_subcommand(1);
  auto* sublevel_alg = sublevel_cmd->add_subcommand("algebra");
  sublevel_alg->add_option("--field", field_desc)->required();
  sublevel_alg->add_option("--alphas", alphas);
  add_budget_flags(sublevel_alg, budget);
  sublevel_alg->callback([&] {
    LevelValue v = algebra_sublevel(make_algebra(field_desc, alphas), budget);
    emit(level_json(v));
    exit_code = v.kind == LevelValue::Kind::Range ? 2 : 0;
  });

  // ---- verify props
  auto* verify = app.add_subcommand("verify", "machine checks");
  verify->require_subcommand(1);
  auto* props = verify->add_subcommand("props", "statement sweep against the oracle");
  props->add_option("--primes", primes_list, "comma-separated odd primes");
  props->add_option("--tmax", tmax, "max doubling count");
  props->add_option("--jobs", jobs, "parallel workers (output independent)");
  add_budget_flags(props, budget);
  props->callback([&] {
    std::vector<std::int64_t> primes;
    for (const auto& p : split_list(primes_list)) primes.push_back(std::stoll(p));
    exit_code = emit(report_json(verify_propositions(primes, tmax, budget, jobs)));
  });

  // ---- brown build | zdsearch | parity | prescribed
  auto* brown = app.add_subcommand("brown", "division-algebra towers");
  brown->require_subcommand(1);

  auto* bbuild = brown->add_subcommand("build", "construct the tower");
  bbuild->add_option("--base", base_desc)->required();
  bbuild->add_option("--levels", levels)->required();
  bbuild->callback([&] {
    auto tower = brown_tower(Field::parse_descriptor(base_desc), levels);
    exit_code = emit(algebra_json(tower.desc));
  });

  auto* bzd = brown->add_subcommand("zdsearch", "zero-divisor search");
  bzd->add_option("--base", base_desc, "base field of a tower");
  bzd->add_option("--levels", levels, "tower height");
  bzd->add_option("--field", field_desc, "explicit field descriptor");
  bzd->add_option("--alphas", alphas, "explicit doubling parameters");
  add_budget_flags(bzd, budget);
  bzd->callback([&] {
    AlgebraPtr desc = field_desc.empty()
                          ? brown_tower(Field::parse_descriptor(base_desc), levels).desc
                          : make_algebra(field_desc, alphas);
    ZeroDivisorReport r = zero_divisor_search(desc, budget);
    emit(zero_divisor_json(r));
    exit_code = r.found ? 0 : 2;
  });

  auto* bparity = brown->add_subcommand("parity", "valuation parity certificate");
  bparity->add_option("--base", base_desc)->required();
  bparity->add_option("--levels", levels, "level index i")->required();
  bparity->add_option("--a3", a3);
  bparity->add_option("--b3", b3);
  bparity->add_option("--c3", c3);
  bparity->add_option("--d3", d3);
  bparity->add_option("--random", random_quadruples,
                      "sample this many random nonzero quadruples instead");
  add_budget_flags(bparity, budget);
  bparity->callback([&] {
    auto tower = brown_tower(Field::parse_descriptor(base_desc), levels);
    AlgebraPtr ext = brown_level_extension(tower, levels);
    if (random_quadruples > 0) {
      Rng rng(budget.seed);
      auto sample = [&] {
        for (int i = 0; i < 256; ++i) {
          AlgebraElement x = random_polynomial_algebra_element(ext, budget, rng);
          if (!is_zero(x)) return x;
        }
        fail(Errc::Internal, "sampling failed");
      };
      std::int64_t contradictions = 0;
      bool all_checks = true;
      for (std::int64_t i = 0; i < random_quadruples; ++i) {
        ParityCertificate cert =
            parity_certificate(ext, sample(), sample(), sample(), sample());
        if (cert.contradiction) ++contradictions;
        for (const auto& c : cert.checks) all_checks = all_checks && c.nonzero;
      }
      exit_code = emit(Json{{"tower", ext->ctx()->descriptor()},
                            {"level-index", levels},
                            {"samples", random_quadruples},
                            {"contradictions", contradictions},
                            {"all-leading-checks-nonzero", all_checks},
                            {"budget", budget_json(budget)}});
      return;
    }
    const Field& f = *ext->ctx();
    auto mk = [&](const std::string& text) {
      return make_element(ext, parse_list(f, text));
    };
    ParityCertificate cert = parity_certificate(ext, mk(a3), mk(b3), mk(c3), mk(d3));
    exit_code = emit(parity_json(ext, cert));
  });

  auto* bpres = brown->add_subcommand("prescribed", "tower with prescribed level");
  bpres->add_option("--base", base_desc)->required();
  bpres->add_option("--levels", levels)->required();
  add_budget_flags(bpres, budget);
  bpres->callback([&] {
    exit_code = emit(prescribed_json(
        prescribed_level_algebra(Field::parse_descriptor(base_desc), levels, budget)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
