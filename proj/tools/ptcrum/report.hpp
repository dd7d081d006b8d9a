#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptcrum/ptcrum.hpp"

namespace ptcrum::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class Verdict { Pass, Fail, Info };

const char* to_string(Verdict v);

/// One named measurement. `bound` is an upper limit unless `lower` is set.
/// Informational checks are reported but never fail a run.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower = false;
  bool informational = false;
  std::string detail;

  Verdict verdict() const;
};

Check upper_check(std::string name, double value, double tolerance, std::string detail = {});
Check lower_check(std::string name, double value, double tolerance, std::string detail = {});
Check info_check(std::string name, double value, double tolerance, std::string detail = {});

Json to_json(const Check& c);
Json to_json(const SpectralReport& r);
Json to_json(Complex z);

/// JSON text with every floating-point number at 17 significant digits,
/// two-space indentation and stable key order.
std::string dump(const Json& doc);

/// Columns x, re, im.
void write_csv(std::ostream& out, const std::vector<double>& xs, const Vector& values);
std::string format_number(double v);

}  // namespace ptcrum::cli
