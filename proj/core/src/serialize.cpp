#include "cdlevel/serialize.hpp"

#include <algorithm>

#include "cdlevel/errors.hpp"

namespace cdlevel {

namespace {

std::string coeff_factor(const Field& f, const Element& c) {
  std::string s = f.str(c);
  const bool compound = s.find(" + ") != std::string::npos ||
                        s.find(" - ") != std::string::npos ||
                        s.find('/') != std::string::npos;
  return compound ? "(" + s + ")" : s;
}

std::string entry_text(const Field& f, const BasisProduct& bp) {
  if (bp.index == 1) return f.str(bp.coeff);
  const std::string basis = "f" + std::to_string(bp.index);
  if (f.is_one(bp.coeff)) return basis;
  if (bp.coeff == f.neg(f.one())) return "-" + basis;
  return coeff_factor(f, bp.coeff) + "*" + basis;
}

}  // namespace

Json budget_json(const SearchBudget& b) {
  return Json{{"height", b.height},
              {"degree", b.degree},
              {"trials", b.trials},
              {"seed", b.seed}};
}

SearchBudget budget_from_json(const Json& j) {
  SearchBudget b;
  b.height = j.at("height").get<std::int64_t>();
  b.degree = j.at("degree").get<int>();
  b.trials = j.at("trials").get<std::int64_t>();
  b.seed = j.at("seed").get<std::uint64_t>();
  return b;
}

Json algebra_json(const AlgebraPtr& desc) {
  Json alphas = Json::array();
  for (const auto& a : desc->alphas()) alphas.push_back(desc->ctx()->str(a));
  return Json{{"field", desc->ctx()->descriptor()},
              {"alphas", std::move(alphas)},
              {"dim", desc->dim()}};
}

Json form_json(const DiagonalForm& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(f.ctx->str(c));
  return Json{{"field", f.ctx->descriptor()}, {"coeffs", std::move(coeffs)}};
}

DiagonalForm form_from_json(const Json& j) {
  FieldPtr ctx = Field::parse_descriptor(j.at("field").get<std::string>());
  std::vector<Element> coeffs;
  for (const auto& c : j.at("coeffs")) {
    coeffs.push_back(ctx->parse(c.get<std::string>()));
  }
  return form_make(std::move(ctx), std::move(coeffs));
}

std::string form_text(const DiagonalForm& f) {
  std::string out = "<";
  for (int i = 0; i < f.rank(); ++i) {
    if (i) out += ", ";
    out += f.ctx->str(f.coeffs[i]);
  }
  return out + ">";
}

Json element_json(const AlgebraElement& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs) coeffs.push_back(x.desc->ctx()->str(c));
  return coeffs;
}

Json witness_json(const std::vector<AlgebraElement>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(element_json(w));
  return out;
}

Json table_json(const AlgebraPtr& desc) {
  const Field& f = *desc->ctx();
  Json rows = Json::array();
  for (int i = 1; i <= desc->dim(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= desc->dim(); ++j) {
      const BasisProduct& bp = desc->basis_product(i, j);
      row.push_back(Json{{"k", bp.index}, {"coeff", f.str(bp.coeff)}});
    }
    rows.push_back(std::move(row));
  }
  Json out = algebra_json(desc);
  out["entries"] = std::move(rows);
  return out;
}

std::string table_text(const AlgebraPtr& desc) {
  const Field& f = *desc->ctx();
  const int q = desc->dim();
  auto label = [](int k) { return k == 1 ? std::string("1") : "f" + std::to_string(k); };

  std::vector<std::vector<std::string>> cells(q + 1,
                                              std::vector<std::string>(q + 1));
  cells[0][0] = "*";
  for (int k = 1; k <= q; ++k) {
    cells[0][k] = label(k);
    cells[k][0] = label(k);
  }
  for (int i = 1; i <= q; ++i) {
    for (int j = 1; j <= q; ++j) {
      cells[i][j] = entry_text(f, desc->basis_product(i, j));
    }
  }
  std::vector<std::size_t> width(q + 1, 0);
  for (int j = 0; j <= q; ++j) {
    for (int i = 0; i <= q; ++i) width[j] = std::max(width[j], cells[i][j].size());
  }
  std::string out;
  for (int i = 0; i <= q; ++i) {
    for (int j = 0; j <= q; ++j) {
      std::string cell = cells[i][j];
      cell.resize(width[j], ' ');
      out += cell;
      out += (j == q) ? "" : "  ";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

Json isotropy_json(const DiagonalForm& f, const IsotropyResult& r) {
  Json out{{"form", form_json(f)}, {"verdict", verdict_name(r.verdict)}};
  switch (r.verdict) {
    case IsotropyResult::Verdict::Isotropic: {
      Json w = Json::array();
      for (const auto& c : r.witness) w.push_back(f.ctx->str(c));
      out["witness"] = std::move(w);
      break;
    }
    case IsotropyResult::Verdict::Anisotropic:
      out["certificate"] = certificate_name(r.certificate);
      break;
    case IsotropyResult::Verdict::Unknown:
      out["budget"] = budget_json(r.budget);
      break;
  }
  return out;
}

Json level_json(const LevelValue& v) {
  switch (v.kind) {
    case LevelValue::Kind::Finite:
      return Json{{"kind", "finite"},
                  {"level", v.value},
                  {"witness", witness_json(v.witness)}};
    case LevelValue::Kind::Infinite:
      return Json{{"kind", "infinite"}};
    case LevelValue::Kind::Range: {
      Json out{{"kind", "range"}, {"lo", v.lo}};
      if (v.hi >= 0) {
        out["hi"] = v.hi;
      } else {
        out["hi"] = nullptr;
      }
      if (!v.witness.empty()) out["witness"] = witness_json(v.witness);
      return out;
    }
  }
  return {};
}

Json report_json(const PropositionReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"proposition", c.proposition},
                          {"p", c.p},
                          {"t", c.t},
                          {"alphas", c.alphas},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"status", c.status}});
  }
  return Json{{"checks", std::move(checks)}, {"violations", report.violations}};
}

Json zero_divisor_json(const ZeroDivisorReport& report) {
  Json out{{"outcome", report.found ? "found" : "none-within-budget"},
           {"budget", budget_json(report.budget)}};
  if (report.found) {
    out["x"] = element_json(report.x);
    out["y"] = element_json(report.y);
    out["verified"] = true;
  }
  return out;
}

Json parity_json(const AlgebraPtr& lower_ext, const ParityCertificate& cert) {
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    checks.push_back(Json{{"label", c.label}, {"nonzero", c.nonzero}});
  }
  return Json{{"tower", lower_ext->ctx()->descriptor()},
              {"level-index", lower_ext->doublings() + 1},
              {"valuations",
               Json{{"m", cert.m}, {"n", cert.n}, {"p", cert.p}, {"r", cert.r}}},
              {"equations", cert.equations},
              {"leading-checks", std::move(checks)},
              {"contradiction", cert.contradiction}};
}

Json prescribed_json(const PrescribedLevel& p) {
  return Json{{"algebra", algebra_json(p.desc)}, {"level", level_json(p.level)}};
}

}  // namespace cdlevel
