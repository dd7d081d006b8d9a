// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptcrum/ptcrum.hpp"

using namespace ptcrum;
namespace ref = ptcrum::reference;

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTol = 1e-3;
constexpr double kImag = 1e-4;
constexpr double kClosed = 1e-9;
constexpr double kSym = 1e-12;
// two refinements resolve the observed order to about this much
constexpr double kOrderResolution = 0.05;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "FAILED ") + what;
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::vector<Complex> samples(const Expression& e, const Grid& g) {
  const auto xs = g.nodes();
  return CompiledExpression(e).sample(xs);
}

double relative(const Expression& a, const Expression& b, const Grid& g) {
  return oracle::relative_gap(samples(a, g), samples(b, g));
}

double fitted(const Expression& a, const Expression& b, const Grid& g) {
  const auto va = samples(a, g);
  auto vb = samples(b, g);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (std::abs(va[i]) > std::abs(va[peak])) peak = i;
  }
  const Complex c = va[peak] / vb[peak];
  for (auto& v : vb) v *= c;
  return oracle::relative_gap(vb, va);
}

std::vector<Complex> levels_of(const SolvableModel& m, const std::vector<int>& idx) {
  std::vector<Complex> out;
  for (int n : idx) out.push_back(m.energy(n));
  return out;
}

struct Spectrum {
  DiscreteHamiltonian h;
  std::vector<Complex> values;
  double seconds = 0.0;
};

Spectrum solve(const Expression& v, const Grid& g) {
  const auto t0 = Clock::now();
  Spectrum s{discretize(v, g, 4), {}, 0.0};
  s.values = eigenvalues(s.h);
  s.seconds = seconds_since(t0);
  return s;
}

double coefficient_error(const MotherPolynomial& p, const std::array<double, 3>& c) {
  double err = 0.0;
  double scale = 0.0;
  for (int k = 0; k < 3; ++k) {
    err = std::max(err, std::abs(p.coefficients[k] - c[k]));
    scale = std::max(scale, std::abs(c[k]));
  }
  return err / scale;
}

Expression random_expression(std::mt19937& rng, int depth) {
  const Expression x = Expression::variable();
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  switch (pick(rng)) {
    case 0:
      return x;
    case 1:
      return Expression{Complex{coef(rng), coef(rng)}};
    case 2:
      return random_expression(rng, depth - 1) + random_expression(rng, depth - 1);
    case 3:
      return random_expression(rng, depth - 1) * random_expression(rng, depth - 1);
    case 4:
      return random_expression(rng, depth - 1) /
             (Expression{3.0} + Expression{0.3} * random_expression(rng, depth - 1));
    case 5: {
      std::uniform_int_distribution<int> n(-2, 3);
      return pow(random_expression(rng, depth - 1), double(n(rng)));
    }
    case 6:
      return exp(Expression{0.5} * random_expression(rng, depth - 1));
    case 7:
      return sinh(Expression{0.5} * random_expression(rng, depth - 1));
    default:
      return cosh(Expression{0.5} * random_expression(rng, depth - 1));
  }
}

bool well_behaved(const Expression& e, const std::vector<double>& xs) {
  try {
    for (double x : xs) {
      for (double dx : {-0.1, 0.0, 0.1}) {
        const Complex v = evaluate(e, x + dx);
        if (!std::isfinite(std::abs(v)) || std::abs(v) > 1e4) return false;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

// Lowest numeric eigenvalues, for the detail lines.
std::string lowest(const std::vector<Complex>& values, int count) {
  std::string out;
  for (int k = 0; k < count && k < int(values.size()); ++k) {
    out += (k ? " " : "") + fmt(values[k].real());
  }
  return out;
}

}  // namespace

int main() {
  const auto start = Clock::now();

  // --- shared objects ---
  const auto osc = oscillator_model(0.75, 1.0, 1);
  const Grid og{8.0, 1601};
  const TransformationSet t12(osc, {1, 2});
  const TransformationSet t02(osc, {0, 2});
  const TransformedModel crum12 = crum_potential(t12, 10, og);
  const TransformedModel crum02 = crum_potential(t02, 10, og);
  const Chain chain12 = first_order_chain(t12, og);
  const Chain chain02 = first_order_chain(t02, og);

  const auto scarf = scarf_model(30.0, 5.0, ScarfTower::Plus);
  const Grid sg = scarf->default_grid();
  const TransformationSet s02(scarf, {0, 2});
  const TransformedModel crum_s = crum_potential(s02, 10, sg);
  const Chain chain_s = first_order_chain(s02, sg);

  const Spectrum source = solve(osc->potential(), og);
  const Spectrum final12 = solve(crum12.potential, og);
  const Spectrum final02 = solve(crum02.potential, og);
  const Spectrum inter12 = solve(chain12.intermediates.at(0), og);
  const Spectrum inter02 = solve(chain02.intermediates.at(0), og);
  const Spectrum scarf_source = solve(scarf->potential(), sg);
  const Spectrum scarf_final = solve(crum_s.potential, sg);

  std::vector<std::pair<std::string, Outcome>> lines;

  // C1
  {
    Outcome o;
    std::vector<int> idx(10);
    for (int n = 0; n < 10; ++n) idx[n] = n;
    const SpectralReport r = match_spectrum(source.values, levels_of(*osc, idx), {}, kTol, kImag);
    o.require(r.passed(), "E_0..E_9 max |dRe| " + fmt(r.max_gap()) + ", max |Im| " + fmt(r.max_imag()));
    o.require(source.seconds <= 20.0, "solve " + fmt(source.seconds) + " s");
    o.note("ten lowest eigenvalues " + lowest(source.values, 10) +
           " interleave the quasi-parity -1 tower 3.5, 7.5, ...");
    lines.emplace_back("C1 oscillator baseline spectrum", o);
  }

  // C2
  {
    Outcome o;
    const SpectralReport r = match_spectrum(final12.values, levels_of(*osc, {0, 3, 4, 5}),
                                            levels_of(*osc, {1, 2}), kTol, kImag);
    bool present = true;
    for (const auto& m : r.matched) present = present && m.ok;
    o.require(present, "0.5, 12.5, 16.5, 20.5 max |dRe| " + fmt(r.max_gap()));
    const double gap = r.min_deleted_distance();
    o.require(gap > 1.0, "nearest eigenvalue to 4.5 or 8.5 at distance " + fmt(gap, 8));
    lines.emplace_back("C2 deletion (1,2) spectrum", o);
  }

  // C3
  {
    Outcome o;
    const SpectralReport r = match_spectrum(final02.values, {osc->energy(1)},
                                            levels_of(*osc, {0, 2}), kTol, kImag);
    o.require(r.matched[0].ok, "level 4.5 at " + fmt(r.matched[0].eigenvalue.real()));
    for (const auto& d : r.missing) {
      o.require(d.ok, "gap at " + fmt(d.level.real()) + ", nearest " + fmt(d.distance));
    }
    o.note("lowest eigenvalue " + fmt(final02.values[0].real()) + " is the quasi-parity -1 ground state");
    lines.emplace_back("C3 deletion (0,2) spectrum", o);
  }

  // C4
  {
    Outcome o;
    const SpectralReport a =
        match_spectrum(inter12.values, levels_of(*osc, {0, 2, 3, 4, 5, 6}), {}, kTol, kImag);
    o.require(a.passed(), "(1,2) intermediate e_0 = E_0, e_n = E_{n+1} max |dRe| " + fmt(a.max_gap()));
    const SpectralReport b =
        match_spectrum(inter02.values, levels_of(*osc, {1, 2, 3, 4, 5, 6}), {}, kTol, kImag);
    o.require(b.passed(), "(0,2) intermediate e_n = E_{n+1} max |dRe| " + fmt(b.max_gap()));
    lines.emplace_back("C4 intermediate spectra", o);
  }

  // C5
  {
    Outcome o;
    const SpectralReport src =
        match_spectrum(scarf_source.values, levels_of(*scarf, {0, 1, 2, 3, 4}), {}, kTol, kImag);
    o.require(src.passed(), "source E_0..E_4 max |dRe| " + fmt(src.max_gap()));
    const SpectralReport fin = match_spectrum(scarf_final.values, levels_of(*scarf, {1, 3, 4}),
                                              levels_of(*scarf, {0, 2}), kTol, kImag);
    bool kept = true;
    for (const auto& m : fin.matched) kept = kept && m.ok;
    o.require(kept, "partner keeps E_1, E_3, E_4 max |dRe| " + fmt(fin.max_gap()));
    o.require(fin.missing[0].ok && fin.missing[1].ok,
              "E_0, E_2 absent, nearest " + fmt(fin.min_deleted_distance()));
    lines.emplace_back("C5 Scarf II spectra", o);
  }

  // C6
  {
    Outcome o;
    auto item = [&](const std::string& name, double value) {
      o.require(value <= kClosed, name + " " + fmt(value));
    };
    item("osc(1,2) potential", relative(crum12.potential, ref::osc12_potential(*osc), og));
    item("osc(1,2) intermediate as printed",
         relative(chain12.intermediates[0], ref::osc12_intermediate_published(*osc), og));
    o.note("derived intermediate " +
           fmt(relative(chain12.intermediates[0], ref::osc12_intermediate(*osc), og)));
    item("osc(0,2) potential", relative(crum02.potential, ref::osc02_potential(*osc), og));
    item("osc(0,2) intermediate", relative(chain02.intermediates[0], ref::osc02_intermediate(*osc), og));
    item("Scarf potential", relative(crum_s.potential, ref::scarf02_potential(*scarf), sg));
    item("Scarf intermediate", relative(chain_s.intermediates[0], ref::scarf02_intermediate(*scarf), sg));
    item("osc(1,2) Wronskian", fitted(crum12.wronskian, ref::osc12_wronskian(*osc), og));
    item("osc(0,2) Wronskian", fitted(crum02.wronskian, ref::osc02_wronskian(*osc), og));
    item("Scarf Wronskian", fitted(crum_s.wronskian, ref::scarf02_wronskian(*scarf), sg));
    lines.emplace_back("C6 closed-form regressions", o);
  }

  // C7
  {
    Outcome o;
    struct Case {
      std::string name;
      const TransformationSet* t;
      Grid grid;
    };
    const std::vector<Case> cases{{"osc(1,2)", &t12, Grid{8.0, 3201}},
                                  {"osc(0,2)", &t02, Grid{8.0, 3201}},
                                  {"Scarf(0,2)", &s02, Grid{18.0, 12001}}};
    for (const auto& c : cases) {
      const PseudoSusy susy(*c.t, c.grid, 8);
      o.require(susy.intertwining() <= 1e-5, c.name + " intertwining " + fmt(susy.intertwining()));
      double worst = 0.0;
      for (int n = 0; n < 4; ++n) {
        if (!c.t->contains(n)) worst = std::max(worst, susy.algebra(n).residual);
      }
      o.require(worst <= 1e-5, c.name + " A#A = P(h0) " + fmt(worst));
    }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> alpha(0.05, 3.0);
    double e87 = 0.0;
    double e109 = 0.0;
    for (int k = 0; k < 20; ++k) {
      const int q = k % 2 == 0 ? 1 : -1;
      const auto m = oscillator_model(alpha(rng), 1.0, q);
      const double qa = q * m->alpha();
      e87 = std::max(e87, coefficient_error(mother_polynomial(TransformationSet(m, {1, 2})),
                                            ref::osc12_mother_published(qa)));
      e109 = std::max(e109, coefficient_error(mother_polynomial(TransformationSet(m, {0, 2})),
                                              ref::osc02_mother(qa)));
    }
    o.require(e87 <= 1e-12, "(1,2) mother coefficients over 20 alpha " + fmt(e87));
    o.require(e109 <= 1e-12, "(0,2) mother coefficients as derived over 20 alpha " + fmt(e109));
    o.note("info: Scarf printed mother coefficients differ by " +
           fmt(coefficient_error(mother_polynomial(s02), ref::scarf02_mother_published(*scarf))));
    lines.emplace_back("C7 pseudo-supersymmetric algebra", o);
  }

  // C8
  {
    Outcome o;
    double pt = 0.0;
    pt = std::max(pt, pt_residual(osc->potential(), og));
    pt = std::max(pt, pt_residual(crum12.potential, og));
    pt = std::max(pt, pt_residual(crum02.potential, og));
    pt = std::max(pt, pt_residual(chain12.intermediates[0], og));
    pt = std::max(pt, pt_residual(chain02.intermediates[0], og));
    pt = std::max(pt, pt_residual(scarf->potential(), sg));
    pt = std::max(pt, pt_residual(crum_s.potential, sg));
    pt = std::max(pt, pt_residual(chain_s.intermediates[0], sg));
    o.require(pt <= kSym, "PT residual " + fmt(pt));
    double ph = 0.0;
    for (const Spectrum* s :
         {&source, &final12, &final02, &inter12, &inter02, &scarf_source, &scarf_final}) {
      ph = std::max(ph, pseudo_hermiticity_residual(s->h));
    }
    ph = std::max(ph, pseudo_hermiticity_residual(discretize(chain_s.intermediates[0], sg, 4)));
    o.require(ph <= kSym, "pseudo-Hermiticity " + fmt(ph));
    double ortho = 0.0;
    for (const auto& [model, grid] :
         std::vector<std::pair<const SolvableModel*, Grid>>{{osc.get(), og}, {scarf.get(), sg}}) {
      std::vector<Expression> psi;
      std::vector<double> norm;
      for (int n = 0; n <= 4; ++n) {
        psi.push_back(model->wavefunction(n));
        norm.push_back(std::abs(pt_inner_product(psi[n], psi[n], grid)));
      }
      for (int m = 0; m <= 4; ++m) {
        for (int n = m + 1; n <= 4; ++n) {
          ortho = std::max(ortho, std::abs(pt_inner_product(psi[m], psi[n], grid)) /
                                      std::sqrt(norm[m] * norm[n]));
        }
      }
    }
    o.require(ortho <= 1e-6, "PT-orthogonality " + fmt(ortho));
    lines.emplace_back("C8 symmetry suite", o);
  }

  // C9
  {
    Outcome o;
    std::mt19937 rng(20240611);
    const std::vector<double> xs{-0.8, -0.4, 0.0, 0.4, 0.8};
    int tested = 0;
    int bad = 0;
    double worst_order = std::numeric_limits<double>::infinity();
    while (tested < 200) {
      const Expression e = random_expression(rng, 4);
      if (e.is_constant() || !well_behaved(e, xs)) continue;
      ++tested;
      const Expression d = differentiate(e);
      const oracle::Fn f = [&](double x) { return evaluate(e, x); };
      for (double x : xs) {
        const Complex exact = evaluate(d, x);
        const double scale = 1.0 + std::abs(exact);
        const double e1 = std::abs(oracle::central4(f, x, 0.02) - exact) / scale;
        const double e2 = std::abs(oracle::central4(f, x, 0.01) - exact) / scale;
        if (e1 < 1e-9) continue;
        const double order = std::log2(e1 / e2);
        worst_order = std::min(worst_order, order);
        if (order < 2.0) ++bad;
      }
    }
    o.require(bad == 0, "derivative order on 200 expressions, min " + fmt(worst_order));

    double anti = 0.0;
    double annihilated = 0.0;
    for (const SolvableModel* m : {static_cast<const SolvableModel*>(osc.get()),
                                   static_cast<const SolvableModel*>(scarf.get())}) {
      const Expression a = m->wavefunction(0);
      const Expression b = m->wavefunction(2);
      const WronskianEvaluator ab = wronskian({a, b});
      const WronskianEvaluator ba = wronskian({b, a});
      const WronskianEvaluator twice = wronskian({a, b, a});
      for (double x = -4.0; x <= 4.0; x += 0.25) {
        const Complex v = ab.value(x);
        anti = std::max(anti, std::abs(v + ba.value(x)) / std::abs(v));
        annihilated = std::max(annihilated, twice.node_measure(x));
      }
    }
    o.require(anti <= 1e-10, "Wronskian antisymmetry " + fmt(anti));
    o.require(annihilated <= 1e-10, "repeated-row annihilation " + fmt(annihilated));

    double chain = 0.0;
    chain = std::max(chain, relative(chain12.op.final_potential(), crum12.potential, og));
    chain = std::max(chain, relative(chain02.op.final_potential(), crum02.potential, og));
    chain = std::max(chain, relative(chain_s.op.final_potential(), crum_s.potential, sg));
    o.require(chain <= 1e-9, "chain vs Crum " + fmt(chain));

    const std::vector<Complex> low = levels_of(*osc, {0, 1, 2, 3});
    for (int stencil : {2, 4}) {
      const RefinementStudy s = refinement_study(osc->potential(), Grid{8.0, 201}, stencil, low, 2);
      o.require(s.min_order() >= stencil - kOrderResolution,
                "stencil " + std::to_string(stencil) + " observed order " + fmt(s.min_order()));
    }
    lines.emplace_back("C9 property suite", o);
  }

  bool all = true;
  for (const auto& [name, o] : lines) {
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    all = all && o.pass;
  }
  std::printf("total %.1f s\n", seconds_since(start));
  return all ? 0 : 1;
}
