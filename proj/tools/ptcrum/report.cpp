#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace ptcrum::cli {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Info: return "info";
  }
  return "fail";
}

Verdict Check::verdict() const {
  if (informational) return Verdict::Info;
  if (std::isnan(value)) return Verdict::Fail;
  const bool ok = lower ? value >= tolerance : value <= tolerance;
  return ok ? Verdict::Pass : Verdict::Fail;
}

Check upper_check(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, false, false, std::move(detail)};
}

Check lower_check(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, true, false, std::move(detail)};
}

Check info_check(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, false, true, std::move(detail)};
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["tolerance"] = c.tolerance;
  j["comparison"] = c.lower ? ">=" : "<=";
  j["verdict"] = to_string(c.verdict());
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const SpectralReport& r) {
  Json j;
  j["tolerance"] = r.tolerance;
  j["separation_floor"] = r.separation_floor;
  j["imag_guard"] = r.imag_guard;
  Json matched = Json::array();
  for (const auto& m : r.matched) {
    matched.push_back({{"level", m.level.real()},
                       {"eigenvalue", to_json(m.eigenvalue)},
                       {"gap", m.gap},
                       {"ok", m.ok}});
  }
  j["matched"] = matched;
  Json missing = Json::array();
  for (const auto& m : r.missing) {
    missing.push_back({{"level", m.level.real()},
                       {"nearest", to_json(m.nearest)},
                       {"distance", m.distance},
                       {"ok", m.ok}});
  }
  j["missing"] = missing;
  return j;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_into(v, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& doc) {
  std::string out;
  dump_into(doc, out, 0);
  out += "\n";
  return out;
}

void write_csv(std::ostream& out, const std::vector<double>& xs, const Vector& values) {
  out << "x,re,im\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Complex v = values[static_cast<Eigen::Index>(i)];
    out << format_number(xs[i]) << ',' << format_number(v.real()) << ',' << format_number(v.imag())
        << '\n';
  }
}

}  // namespace ptcrum::cli
