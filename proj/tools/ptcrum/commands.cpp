#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "report.hpp"
#include "suite.hpp"

namespace ptcrum::cli {

namespace {

namespace fs = std::filesystem;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Json metadata(const std::string& command, const RunConfig& cfg, const SolvableModel& model,
              const Grid& grid) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  Json params = Json::object();
  for (const auto& [k, v] : model.parameters()) params[k] = v;
  doc["model"] = {{"name", model.name()}, {"parameters", params}};
  doc["indices"] = cfg.indices;
  doc["grid"] = {{"half_width", grid.half_width()},
                 {"points", grid.points()},
                 {"stencil", cfg.stencil}};
  return doc;
}

Json samples_json(const Expression& e, const Grid& grid) {
  const auto xs = grid.nodes();
  const Vector v = sample(e, grid);
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return {{"x", xs}, {"re", re}, {"im", im}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void emit_document(const RunConfig& cfg, const Json& doc, std::ostream& out) {
  if (cfg.out.empty()) {
    out << dump(doc);
  } else {
    write_text(cfg.out, dump(doc));
  }
}

fs::path output_directory(const RunConfig& cfg) {
  if (cfg.out.empty()) throw UsageError("--format csv writes several files and needs --out DIR");
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory " + cfg.out + ": " + ec.message());
  return dir;
}

void write_samples_csv(const fs::path& path, const Expression& e, const Grid& grid) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  write_csv(f, grid.nodes(), sample(e, grid));
}

void write_levels_csv(std::ostream& f, const std::vector<std::pair<int, Complex>>& levels) {
  f << "n,re,im\n";
  for (const auto& [n, e] : levels) {
    f << n << ',' << format_number(e.real()) << ',' << format_number(e.imag()) << '\n';
  }
}

Json failure_record(const std::string& command, const Error& e) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["status"] = "failure";
  doc["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  return doc;
}

int report_failure(const RunConfig& cfg, const std::string& command, const Error& e,
                   std::ostream& out) {
  if (cfg.format == Format::Json) {
    emit_document(cfg, failure_record(command, e), out);
  } else {
    out << command << " failed: " << e.kind() << ": " << e.what() << '\n';
  }
  return kExitFail;
}

std::vector<std::pair<int, Complex>> source_levels(const SolvableModel& model, int count) {
  std::vector<std::pair<int, Complex>> out;
  const auto energies = model.energies(count);
  for (int n = 0; n < static_cast<int>(energies.size()); ++n) out.emplace_back(n, energies[n]);
  return out;
}

struct Transformed {
  TransformationSet set;
  TransformedModel crum;
  Chain chain;
};

Transformed transform(const ModelPtr& model, const RunConfig& cfg, const Grid& grid) {
  TransformationSet t(model, cfg.indices);
  TransformedModel crum = crum_potential(t, level_count(cfg, *model), grid);
  Chain chain = first_order_chain(t, grid);
  return {std::move(t), std::move(crum), std::move(chain)};
}

}  // namespace

bool is_parameter_error(const Error& e) {
  return dynamic_cast<const InvalidParameter*>(&e) || dynamic_cast<const InvalidShift*>(&e) ||
         dynamic_cast<const BrokenPTRegime*>(&e) || dynamic_cast<const NoBoundStates*>(&e) ||
         dynamic_cast<const ParameterPole*>(&e) || dynamic_cast<const IndexOutOfRange*>(&e) ||
         dynamic_cast<const InvalidTransformation*>(&e) || dynamic_cast<const InvalidGrid*>(&e);
}

int cmd_model_show(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = build_model(cfg);
  const Grid grid = build_grid(cfg, *model);
  const auto levels = source_levels(*model, level_count(cfg, *model));
  const auto* scarf = dynamic_cast<const ScarfModel*>(model.get());

  if (cfg.format == Format::Csv) {
    if (cfg.out.empty()) {
      write_levels_csv(out, levels);
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + cfg.out);
      write_levels_csv(f, levels);
    }
    return kExitPass;
  }
  if (cfg.format == Format::Json) {
    Json doc = metadata("model show", cfg, *model, grid);
    if (scarf) doc["bound_count"] = scarf->bound_count();
    Json table = Json::array();
    for (const auto& [n, e] : levels) table.push_back({{"n", n}, {"energy", to_json(e)}});
    doc["levels"] = table;
    doc["potential"] = samples_json(model->potential(), grid);
    emit_document(cfg, doc, out);
    return kExitPass;
  }

  out << "model  " << model->name() << '\n';
  for (const auto& [k, v] : model->parameters()) {
    out << "  " << std::left << std::setw(13) << k << short_number(v) << '\n';
  }
  out << "levels\n";
  for (const auto& [n, e] : levels) out << "  " << std::setw(4) << n << short_number(e.real()) << '\n';
  return kExitPass;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = build_model(cfg);
  const Grid grid = build_grid(cfg, *model);
  std::optional<Transformed> tr;
  try {
    tr = transform(model, cfg, grid);
  } catch (const SingularTransform& e) {
    return report_failure(cfg, "transform", e, out);
  } catch (const SingularIntermediate& e) {
    return report_failure(cfg, "transform", e, out);
  }
  const auto& [t, crum, chain] = *tr;
  const MotherPolynomial mother = mother_polynomial(t);
  const auto* scarf = dynamic_cast<const ScarfModel*>(model.get());
  const bool scarf02 = scarf && t.indices() == std::vector<int>{0, 2};
  const int shown = std::min<int>(4, static_cast<int>(crum.surviving_levels.size()));

  if (cfg.format == Format::Csv) {
    const fs::path dir = output_directory(cfg);
    write_samples_csv(dir / "potential.csv", crum.potential, grid);
    for (std::size_t k = 0; k < chain.intermediates.size(); ++k) {
      write_samples_csv(dir / ("intermediate_" + std::to_string(k + 1) + ".csv"),
                        chain.intermediates[k], grid);
    }
    for (int i = 0; i < shown; ++i) {
      const int n = crum.surviving_levels[i].index;
      write_samples_csv(dir / ("psi_" + std::to_string(n) + ".csv"), transform_eigenstate(t, n), grid);
    }
    std::ofstream f(dir / "levels.csv", std::ios::binary);
    std::vector<std::pair<int, Complex>> levels;
    for (const auto& l : crum.surviving_levels) levels.emplace_back(l.index, l.energy);
    write_levels_csv(f, levels);
    return kExitPass;
  }

  if (cfg.format == Format::Json) {
    Json doc = metadata("transform", cfg, *model, grid);
    doc["status"] = "ok";
    doc["order"] = t.order();
    Json alphas = Json::array();
    for (const Complex a : t.energies()) alphas.push_back(a.real());
    doc["factorization_energies"] = alphas;
    Json surviving = Json::array();
    for (const auto& l : crum.surviving_levels) {
      surviving.push_back({{"index", l.index}, {"energy", l.energy.real()}});
    }
    doc["surviving_levels"] = surviving;
    doc["node_measures"] = chain.node_measures;
    Json coeffs = Json::array();
    for (const Complex c : mother.coefficients) coeffs.push_back(c.real());
    doc["mother_polynomial"] = coeffs;
    if (scarf02) {
      const auto p = reference::scarf02_parameters(*scarf);
      doc["partner_parameters"] = {
          {"lambda", p.lambda}, {"mu", p.mu}, {"rho", p.rho}, {"sigma", p.sigma}};
    }
    doc["potential"] = samples_json(crum.potential, grid);
    Json inter = Json::array();
    for (const auto& v : chain.intermediates) inter.push_back(samples_json(v, grid));
    doc["intermediates"] = inter;
    Json states = Json::array();
    for (int i = 0; i < shown; ++i) {
      const int n = crum.surviving_levels[i].index;
      states.push_back({{"index", n}, {"samples", samples_json(transform_eigenstate(t, n), grid)}});
    }
    doc["eigenfunctions"] = states;
    emit_document(cfg, doc, out);
    return kExitPass;
  }

  out << "model  " << model->name() << "\nindices";
  for (const int i : t.indices()) out << ' ' << i;
  out << "\nfactorization energies";
  for (const Complex a : t.energies()) out << ' ' << short_number(a.real());
  out << "\nnode measures";
  for (const double m : chain.node_measures) out << ' ' << scientific(m);
  out << "\nmother polynomial";
  for (const Complex c : mother.coefficients) out << ' ' << short_number(c.real());
  out << "\nsurviving levels\n";
  for (const auto& l : crum.surviving_levels) {
    out << "  " << std::left << std::setw(4) << l.index << short_number(l.energy.real()) << '\n';
  }
  if (scarf02) {
    const auto p = reference::scarf02_parameters(*scarf);
    out << "partner parameters\n"
        << "  lambda  " << short_number(p.lambda) << '\n'
        << "  mu      " << short_number(p.mu) << '\n'
        << "  rho     " << short_number(p.rho) << '\n'
        << "  sigma   " << short_number(p.sigma) << '\n';
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelPtr model = build_model(cfg);
  const Grid grid = build_grid(cfg, *model);
  SuiteOptions options;
  options.grid = grid;
  options.stencil = cfg.stencil;
  options.tol_spectrum = cfg.tol_spectrum;
  options.levels = level_count(cfg, *model);
  options.refine = cfg.refine;
  default_operator_discretization(*model, grid, options);
  if (cfg.susy_grid_n) options.operator_grid = Grid{grid.half_width(), *cfg.susy_grid_n};
  if (cfg.susy_stencil) options.operator_stencil = *cfg.susy_stencil;
  // validate before the long run
  kinetic_matrix(Grid{1.0, 11}, options.stencil);
  kinetic_matrix(Grid{1.0, 11}, options.operator_stencil);

  SuiteResult result;
  try {
    result = run_verification(model, cfg.indices, options);
  } catch (const Error& e) {
    if (is_parameter_error(e)) throw;
    err << "verify failed: " << e.kind() << ": " << e.what() << '\n';
    return report_failure(cfg, "verify", e, out);
  }
  const Check* first = result.first_failure();

  if (cfg.format == Format::Json) {
    Json doc = metadata("verify", cfg, *model, grid);
    doc["status"] = first ? "fail" : "pass";
    if (first) doc["first_failure"] = first->name;
    Json checks = Json::array();
    for (const auto& c : result.checks) checks.push_back(to_json(c));
    doc["checks"] = checks;
    doc["spectra"] = result.spectra;
    doc["results"] = result.extras;
    emit_document(cfg, doc, out);
  } else if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "name,value,tolerance,comparison,verdict\n";
    for (const auto& c : result.checks) {
      os << c.name << ',' << format_number(c.value) << ',' << format_number(c.tolerance) << ','
         << (c.lower ? ">=" : "<=") << ',' << to_string(c.verdict()) << '\n';
    }
    if (cfg.out.empty()) {
      out << os.str();
    } else {
      write_text(cfg.out, os.str());
    }
  } else {
    for (const auto& c : result.checks) {
      out << std::left << std::setw(6) << to_string(c.verdict()) << std::setw(40) << c.name
          << std::setw(12) << scientific(c.value) << (c.lower ? ">= " : "<= ")
          << scientific(c.tolerance);
      if (!c.detail.empty()) out << "  " << c.detail;
      out << '\n';
    }
    if (result.extras.contains("refinement")) {
      const Json& r = result.extras["refinement"];
      out << "convergence (stencil " << r["stencil"].get<int>() << ")\n";
      for (const auto& row : r["levels"]) {
        out << "  level " << std::setw(8) << short_number(row["level"].get<double>()) << " orders";
        for (const auto& o : row["orders"]) out << ' ' << short_number(o.get<double>());
        out << '\n';
      }
    }
    out << (first ? "FAIL" : "PASS") << " (" << result.checks.size() << " checks)\n";
  }
  if (first) {
    err << "first failing check: " << first->name << '\n';
    return kExitFail;
  }
  return kExitPass;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = build_model(cfg);
  const Grid grid = build_grid(cfg, *model);
  std::optional<Transformed> tr;
  if (!cfg.indices.empty()) {
    try {
      tr = transform(model, cfg, grid);
    } catch (const SingularTransform& e) {
      return report_failure(cfg, "export", e, out);
    } catch (const SingularIntermediate& e) {
      return report_failure(cfg, "export", e, out);
    }
  }
  const int count = std::min(level_count(cfg, *model), 5);
  const Expression final_potential = tr ? tr->crum.potential : model->potential();
  const auto spectrum = eigenvalues(discretize(final_potential, grid, cfg.stencil));

  if (cfg.format == Format::Json) {
    Json doc = metadata("export", cfg, *model, grid);
    doc["source_potential"] = samples_json(model->potential(), grid);
    Json states = Json::array();
    for (int n = 0; n < count; ++n) {
      states.push_back({{"index", n}, {"samples", samples_json(model->wavefunction(n), grid)}});
    }
    doc["source_eigenfunctions"] = states;
    if (tr) {
      doc["potential"] = samples_json(tr->crum.potential, grid);
      Json inter = Json::array();
      for (const auto& v : tr->chain.intermediates) inter.push_back(samples_json(v, grid));
      doc["intermediates"] = inter;
      Json partner = Json::array();
      for (const auto& l : tr->crum.surviving_levels) {
        if (static_cast<int>(partner.size()) == count) break;
        partner.push_back({{"index", l.index},
                           {"samples", samples_json(transform_eigenstate(tr->set, l.index), grid)}});
      }
      doc["eigenfunctions"] = partner;
    }
    Json values = Json::array();
    for (const Complex v : spectrum) values.push_back(to_json(v));
    doc["spectrum"] = values;
    emit_document(cfg, doc, out);
    return kExitPass;
  }

  const fs::path dir = output_directory(cfg);
  write_samples_csv(dir / "source_potential.csv", model->potential(), grid);
  for (int n = 0; n < count; ++n) {
    write_samples_csv(dir / ("source_psi_" + std::to_string(n) + ".csv"), model->wavefunction(n), grid);
  }
  if (tr) {
    write_samples_csv(dir / "potential.csv", tr->crum.potential, grid);
    for (std::size_t k = 0; k < tr->chain.intermediates.size(); ++k) {
      write_samples_csv(dir / ("intermediate_" + std::to_string(k + 1) + ".csv"),
                        tr->chain.intermediates[k], grid);
    }
    int written = 0;
    for (const auto& l : tr->crum.surviving_levels) {
      if (written++ == count) break;
      write_samples_csv(dir / ("psi_" + std::to_string(l.index) + ".csv"),
                        transform_eigenstate(tr->set, l.index), grid);
    }
  }
  std::ofstream f(dir / "spectrum.csv", std::ios::binary);
  f << "k,re,im\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    f << k << ',' << format_number(spectrum[k].real()) << ',' << format_number(spectrum[k].imag())
      << '\n';
  }
  out << "wrote " << dir.string() << '\n';
  return kExitPass;
}

}  // namespace ptcrum::cli
