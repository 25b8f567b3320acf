#include "shockcop/shockmodel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "shockcop/error.hpp"
#include "shockcop/generators.hpp"

namespace shockcop {

// ----------------------------------------------------------- result access

CopulaSpec ScenarioResult::h_copula_low() const {
  const EnvelopeFamily& g = generators;
  if (model == CopulaFamily::Marshall) return CopulaSpec::marshall(g.phi_low, g.second_low);
  return CopulaSpec::maxmin(g.phi_low, g.second_low);
}

CopulaSpec ScenarioResult::h_copula_up() const {
  const EnvelopeFamily& g = generators;
  if (model == CopulaFamily::Marshall) return CopulaSpec::marshall(g.phi_up, g.second_up);
  return CopulaSpec::maxmin(g.phi_up, g.second_up);
}

BivariateBound ScenarioResult::h_low() const {
  return sklar_compose(h_copula_low(), u_box.lower(), v_box.lower());
}

BivariateBound ScenarioResult::h_up() const {
  return sklar_compose(h_copula_up(), u_box.upper(), v_box.upper());
}

bool ScenarioResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ScenarioResult::find(const std::string& id) const {
  for (const Check& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

// ----------------------------------------------------------- direct forms

double marshall_joint(const DistFn& fx, const DistFn& fy, const DistFn& fz, double x, double y) {
  return fx(x) * fy(y) * fz(std::min(x, y));
}

double maxmin_joint(const DistFn& fx, const DistFn& fy, const DistFn& fz, double x, double y) {
  if (x <= y) return fx(x) * fz(x);
  const double zy = fz(y);
  return fx(x) * (zy + fy(y) * (fz(x) - zy));
}

std::vector<double> probe_grid(std::span<const DistFn* const> fns, std::size_t n) {
  if (n < 2) throw InvalidParameter("probe grid needs at least 2 points");
  std::vector<double> bps = merged_breakpoints(fns);
  double lo = kInf, hi = -kInf;
  for (const DistFn* f : fns) {
    const auto [a, b] = f->support_hint();
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  std::vector<double> xs;
  std::size_t fill = n;
  if (bps.size() <= n / 2) {
    xs = bps;
    fill = n - bps.size();
  }
  for (std::size_t i = 0; i < fill; ++i) {
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(fill - 1));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // Fill points landing on breakpoints collapse; split the widest gaps until
  // n distinct points remain.
  while (xs.size() < n) {
    std::size_t w = 1;
    for (std::size_t i = 2; i < xs.size(); ++i) {
      if (xs[i] - xs[i - 1] > xs[w] - xs[w - 1]) w = i;
    }
    xs.insert(xs.begin() + static_cast<std::ptrdiff_t>(w), xs[w - 1] + 0.5 * (xs[w] - xs[w - 1]));
  }
  return xs;
}

// -------------------------------------------------------------- oracle

namespace {

void require_atoms(std::span<const Atom> atoms, const char* who) {
  if (atoms.empty() || atoms.size() > 12) {
    throw InvalidParameter(std::string(who) + ": oracle needs 1 to 12 atoms");
  }
  double sum = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.at)) throw InvalidParameter(std::string(who) + ": bad atom");
    sum += a.mass;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidParameter(std::string(who) + ": atom masses must sum to 1");
  }
}

std::vector<double> corners(std::span<const Atom> a, std::span<const Atom> b) {
  std::vector<double> out;
  for (const Atom& t : a) out.push_back(t.at);
  for (const Atom& t : b) out.push_back(t.at);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.insert(out.begin(), out.front() - 1.0);
  return out;
}

}  // namespace

GridTable oracle_joint(std::span<const Atom> xs, std::span<const Atom> ys, std::span<const Atom> zs,
                       CopulaFamily model) {
  require_atoms(xs, "X");
  require_atoms(ys, "Y");
  require_atoms(zs, "Z");
  GridTable t{corners(xs, zs), corners(ys, zs), {}};
  t.values.assign(t.nx() * t.ny(), 0.0);
  for (const Atom& a : xs) {
    for (const Atom& b : ys) {
      for (const Atom& c : zs) {
        const double p = a.mass * b.mass * c.mass;
        const double first = std::max(a.at, c.at);
        const double second = model == CopulaFamily::Marshall ? std::max(b.at, c.at) : std::min(b.at, c.at);
        for (std::size_t i = 0; i < t.nx(); ++i) {
          if (first > t.xs[i]) continue;
          for (std::size_t j = 0; j < t.ny(); ++j) {
            if (second <= t.ys[j]) t.values[i * t.ny() + j] += p;
          }
        }
      }
    }
  }
  return t;
}

double compare_oracle(const BivariateBound& h, const GridTable& oracle) {
  double dev = 0.0;
  for (std::size_t i = 0; i < oracle.nx(); ++i) {
    for (std::size_t j = 0; j < oracle.ny(); ++j) {
      dev = std::max(dev, std::abs(h(oracle.xs[i], oracle.ys[j]) - oracle.at(i, j)));
    }
  }
  return dev;
}

// ------------------------------------------------------------ pipeline

namespace {

// Query position: left limit, value or right limit at x.
struct Site {
  double x;
  int side;
};

double at(const DistFn& f, const Site& s) {
  if (s.side < 0) return f.left_limit(s.x);
  if (s.side > 0) return f.right_limit(s.x);
  return f(s.x);
}

std::vector<Site> sites_for(std::span<const DistFn* const> fns, std::span<const double> grid) {
  std::vector<Site> out{{-kInf, 0}, {-kInf, 1}};
  for (double x : merged_breakpoints(fns)) {
    out.push_back({x, -1});
    out.push_back({x, 0});
    out.push_back({x, 1});
  }
  for (double x : grid) out.push_back({x, 0});
  out.push_back({kInf, -1});
  out.push_back({kInf, 0});
  return out;
}

struct Prepared {
  PBox x;
  PBox y;
  DistFn z;
  bool discretized = false;
  double bound = 0.0;
};

Prepared discretized(const Scenario& s) {
  const DistFn* fns[] = {&s.x.lower(), &s.x.upper(), &s.y.lower(), &s.y.upper(), &s.z};
  double a = kInf, b = -kInf;
  for (const DistFn* f : fns) {
    const auto [lo, hi] = f->support_hint();
    a = std::min(a, lo);
    b = std::max(b, hi);
  }
  Prepared p;
  p.discretized = true;
  const auto step = [&](const DistFn& f) {
    if (f.is_step()) return f;
    p.bound = std::max(p.bound, discretization_bound(f, kDiscretizationAtoms, a, b));
    return discretize(f, kDiscretizationAtoms, a, b);
  };
  p.x = make_pbox(step(s.x.lower()), step(s.x.upper()));
  p.y = make_pbox(step(s.y.lower()), step(s.y.upper()));
  p.z = step(s.z);
  return p;
}

double sup_dev(const std::vector<Site>& sites, const std::function<double(const Site&)>& f) {
  double d = 0.0;
  for (const Site& s : sites) d = std::max(d, f(s));
  return d;
}

double relative_gap(double a, double b) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

class Runner {
 public:
  Runner(const Scenario& s, Prepared p) : s_(s), p_(std::move(p)) {}

  ScenarioResult run() {
    r_.model = s_.model;
    r_.discretized = p_.discretized;
    r_.discretization_bound = p_.bound;
    r_.tol = s_.tol.value_or(p_.discretized ? kDiscretizedTol : kExactTol);
    r_.x = p_.x;
    r_.y = p_.y;
    r_.z = p_.z;
    tol_ = r_.tol;
    const bool marshall = s_.model == CopulaFamily::Marshall;

    const PBox pz = precise(p_.z);
    r_.u_box = max_pbox(p_.x, pz);
    r_.v_box = marshall ? max_pbox(p_.y, pz) : min_pbox(p_.y, pz);

    EnvelopeFamily& g = r_.generators;
    g.family = s_.model;
    g.phi_low = build_phi(lx(), z());
    g.phi_up = build_phi(ux(), z());
    g.second_low = marshall ? build_psi(ly(), z()) : build_chi(ly(), z());
    g.second_up = marshall ? build_psi(uy(), z()) : build_chi(uy(), z());

    const DistFn* fns[] = {&lx(), &ux(), &ly(), &uy(), &z()};
    r_.xs = probe_grid(fns, s_.xy_grid);
    r_.ys = r_.xs;
    sites_ = sites_for(fns, r_.xs);
    us_ = unit_grid(s_.grid);

    generator_checks();
    item_i();
    item_ii();
    item_iii();
    item_iv();
    item_v();
    item_vi();
    item_vii();
    item_viii_ix();
    copula_checks();
    if (!marshall) maxmin_extras();
    if (!p_.discretized) extension_probes();
    return std::move(r_);
  }

 private:
  const DistFn& lx() const { return p_.x.lower(); }
  const DistFn& ux() const { return p_.x.upper(); }
  const DistFn& ly() const { return p_.y.lower(); }
  const DistFn& uy() const { return p_.y.upper(); }
  const DistFn& z() const { return p_.z; }
  bool marshall() const { return s_.model == CopulaFamily::Marshall; }

  void add(std::string id, std::string what, bool pass, double value) {
    r_.checks.push_back({std::move(id), std::move(what), pass, value});
  }
  void add_dev(std::string id, std::string what, double dev) {
    add(std::move(id), std::move(what), dev <= tol_, dev);
  }
  void add_margin(std::string id, std::string what, double margin) {
    add(std::move(id), std::move(what), margin >= -tol_, margin);
  }

  GridTable table(const CopulaSpec& c) const {
    return parallel::tabulate([&c](double u, double v) { return c(u, v); }, us_, us_);
  }

  // Smallest b - a over the grid.
  static double margin(const GridTable& a, const GridTable& b) {
    double m = kInf;
    for (std::size_t k = 0; k < a.values.size(); ++k) m = std::min(m, b.values[k] - a.values[k]);
    return m;
  }

  void extension_probes() {
    const EnvelopeFamily& g = r_.generators;
    const std::string second = marshall() ? "psi_" : "chi_";
    const std::uint64_t seed = 0x70726f6265ULL;
    r_.extension_probes = {
        {"phi_low", probe_extensions(g.phi_low, r_.u_box.lower(), lx(), seed)},
        {"phi_up", probe_extensions(g.phi_up, r_.u_box.upper(), ux(), seed + 1)},
        {second + "low", probe_extensions(g.second_low, r_.v_box.lower(), ly(), seed + 2)},
        {second + "up", probe_extensions(g.second_up, r_.v_box.upper(), uy(), seed + 3)},
    };
  }

  void generator_checks() {
    const EnvelopeFamily& g = r_.generators;
    bool ok = true;
    for (const Generator* gen : {&g.phi_low, &g.phi_up, &g.second_low, &g.second_up}) {
      ok = ok && check_generator(*gen, tol_).pass;
    }
    add("generators", "envelope generators satisfy their kind's conditions", ok, ok ? 0.0 : 1.0);
  }

  void item_i() {
    const EnvelopeFamily& g = r_.generators;
    const OrderCheck a = check_order(g.phi_low, g.phi_up, tol_);
    const OrderCheck b = check_order(g.second_low, g.second_up, tol_);
    double excess = 0.0;
    if (!a.holds) excess = std::max(excess, a.lhs - a.rhs);
    if (!b.holds) excess = std::max(excess, b.lhs - b.rhs);
    add("i", marshall() ? "low phi <= up phi and low psi <= up psi"
                        : "low phi <= up phi and low chi <= up chi",
        a.holds && b.holds, -excess);
  }

  void item_ii() {
    const EnvelopeFamily& g = r_.generators;
    double dev = 0.0;
    for (int side = 0; side < 2; ++side) {
      const Generator& phi = side == 0 ? g.phi_low : g.phi_up;
      const Generator& sec = side == 0 ? g.second_low : g.second_up;
      const DistFn& f = side == 0 ? r_.u_box.lower() : r_.u_box.upper();
      const DistFn& h = side == 0 ? r_.v_box.lower() : r_.v_box.upper();
      dev = std::max(dev, sup_dev(sites_, [&](const Site& s) {
        const double fu = at(f, s);
        const double hv = at(h, s);
        if (marshall()) {
          if (!(fu > 0.0 && hv > 0.0)) return 0.0;
          return relative_gap(phi_star(phi, fu), phi_star(sec, hv));
        }
        if (!(fu > 0.0 && hv < 1.0)) return 0.0;
        return relative_gap(phi_star(phi, fu), chi_star(sec, hv));
      }));
    }
    add_dev("ii", marshall() ? "phi* o F = psi* o G on both sides" : "phi* o F = chi_* o K on both sides",
            dev);
  }

  // Sandwich of mid generators between the family bounds.
  void item_iii() {
    const EnvelopeFamily& g = r_.generators;
    const GridTable lo = table(g.lower_bound());
    const GridTable hi = table(g.upper_bound());
    const double ts[] = {0.25, 0.5, 0.75};
    double worst = kInf;
    std::size_t tried = 0, valid = 0;
    for (double t : ts) {
      const Generator phi = convex_combination(g.phi_low, g.phi_up, t);
      for (double s : ts) {
        ++tried;
        const Generator sec = convex_combination(g.second_low, g.second_up, s);
        if (!check_generator(phi, tol_).pass || !check_generator(sec, tol_).pass) continue;
        ++valid;
        const CopulaSpec c = marshall() ? CopulaSpec::marshall(phi, sec) : CopulaSpec::maxmin(phi, sec);
        const GridTable mid = table(c);
        worst = std::min({worst, margin(lo, mid), margin(mid, hi)});
      }
    }
    add_margin("iii", "mid-generator copulas lie between the family bounds (" + std::to_string(valid) +
                          "/" + std::to_string(tried) + " admissible)",
               valid == 0 ? -kInf : worst);

    // Generators of mixture members F_X, F_Y inside the p-boxes, when the
    // mixture is representable.
    double member_worst = kInf;
    std::size_t members = 0;
    for (double t : ts) {
      try {
        const DistFn mx = mix(lx(), ux(), t);
        const DistFn my = mix(ly(), uy(), t);
        const Generator phi = build_phi(mx, z());
        const Generator sec = marshall() ? build_psi(my, z()) : build_chi(my, z());
        const OrderCheck o1 = check_order(g.phi_low, phi, tol_);
        const OrderCheck o2 = check_order(phi, g.phi_up, tol_);
        const OrderCheck o3 = check_order(g.second_low, sec, tol_);
        const OrderCheck o4 = check_order(sec, g.second_up, tol_);
        if (!(o1.holds && o2.holds && o3.holds && o4.holds)) member_worst = -1.0;
        const CopulaSpec c = marshall() ? CopulaSpec::marshall(phi, sec) : CopulaSpec::maxmin(phi, sec);
        const GridTable mid = table(c);
        member_worst = std::min({member_worst, margin(lo, mid), margin(mid, hi)});
        ++members;
      } catch (const UnsupportedSegmentPair&) {
      }
    }
    if (members > 0) {
      add_margin("iii-members", "copulas of mixture members lie between the family bounds", member_worst);
    }
  }

  void item_iv() {
    const double dev = sup_dev(sites_, [&](const Site& s) {
      const double zs = at(z(), s);
      const auto second = [&](const DistFn& fy) {
        const double y = at(fy, s);
        return marshall() ? y * zs : 1.0 - (1.0 - y) * (1.0 - zs);
      };
      return std::max({std::abs(at(r_.u_box.lower(), s) - at(lx(), s) * zs),
                       std::abs(at(r_.u_box.upper(), s) - at(ux(), s) * zs),
                       std::abs(at(r_.v_box.lower(), s) - second(ly())),
                       std::abs(at(r_.v_box.upper(), s) - second(uy()))});
    });
    add_dev("iv", marshall() ? "lowF = lowF_X F_Z, lowG = lowF_Y F_Z and upper analogues"
                             : "lowF = lowF_X F_Z, lowK = lowF_Y + F_Z - lowF_Y F_Z and upper analogues",
            dev);
  }

  void item_v() {
    const EnvelopeFamily& g = r_.generators;
    const double dev = std::max({check_association(g.phi_low, r_.u_box.lower(), lx()).max_deviation,
                                 check_association(g.phi_up, r_.u_box.upper(), ux()).max_deviation,
                                 check_association(g.second_low, r_.v_box.lower(), ly()).max_deviation,
                                 check_association(g.second_up, r_.v_box.upper(), uy()).max_deviation});
    add_dev("v", "envelope generators are associated to the bounding marginals", dev);
  }

  void item_vi() {
    double excess = 0.0;
    for (const PBox* b : {&r_.u_box, &r_.v_box}) {
      if (const auto w = find_order_violation(b->lower(), b->upper(), tol_)) {
        excess = std::max(excess, w->lhs - w->rhs);
      }
    }
    add_margin("vi", marshall() ? "lowF <= upF and lowG <= upG" : "lowF <= upF and lowK <= upK", -excess);
  }

  // Pointwise mixtures of the marginal bounds stay inside the derived p-boxes.
  void item_vii() {
    double worst = kInf;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (const Site& s : sites_) {
        const double zs = at(z(), s);
        const double fx = t * at(lx(), s) + (1.0 - t) * at(ux(), s);
        const double fy = t * at(ly(), s) + (1.0 - t) * at(uy(), s);
        const double u = fx * zs;
        const double v = marshall() ? fy * zs : 1.0 - (1.0 - fy) * (1.0 - zs);
        worst = std::min({worst, u - at(r_.u_box.lower(), s), at(r_.u_box.upper(), s) - u,
                          v - at(r_.v_box.lower(), s), at(r_.v_box.upper(), s) - v});
      }
    }
    add_margin("vii", "marginals of members lie in the derived p-boxes", worst);
  }

  void item_viii_ix() {
    const BivariateBound hl = r_.h_low();
    const BivariateBound hu = r_.h_up();
    const GridTable tl = parallel::tabulate(hl.fn(), r_.xs, r_.ys);
    const GridTable tu = parallel::tabulate(hu.fn(), r_.xs, r_.ys);
    add_margin("viii", "lowH <= upH on the abscissa grid", margin(tl, tu));

    const auto direct = [this](const DistFn& fx, const DistFn& fy) {
      const DistFn* a = &fx;
      const DistFn* b = &fy;
      const DistFn* c = &p_.z;
      if (marshall()) {
        return std::function<double(double, double)>(
            [a, b, c](double x, double y) { return marshall_joint(*a, *b, *c, x, y); });
      }
      return std::function<double(double, double)>(
          [a, b, c](double x, double y) { return maxmin_joint(*a, *b, *c, x, y); });
    };
    const GridTable dl = parallel::tabulate(direct(lx(), ly()), r_.xs, r_.ys);
    const GridTable du = parallel::tabulate(direct(ux(), uy()), r_.xs, r_.ys);
    double dev = 0.0;
    for (std::size_t k = 0; k < tl.values.size(); ++k) {
      dev = std::max({dev, std::abs(tl.values[k] - dl.values[k]), std::abs(tu.values[k] - du.values[k])});
    }
    add_dev("ix", "composed H bounds equal the direct shock-model formulas", dev);

    const ConditionReport pb = check_bivariate_pbox_conditions(hl, hu, r_.xs, r_.ys, tol_);
    double worst = 0.0;
    for (const ConditionResult& c : pb.results) worst = std::min(worst, c.worst.value);
    add("pbox-conditions", "(lowH, upH) is a bivariate p-box meeting the coherence conditions", pb.pass(),
        worst);
  }

  void copula_checks() {
    const EnvelopeFamily& g = r_.generators;
    const CopulaSpec lo = g.lower_bound();
    const CopulaSpec hi = g.upper_bound();
    const AxiomReport a = check_copula_axioms(lo, s_.grid);
    const AxiomReport b = check_copula_axioms(hi, s_.grid);
    add_margin("axioms", "family bound copulas satisfy (C1)-(C3)",
               std::min({a.min_volume, b.min_volume, -a.boundary_deviation, -b.boundary_deviation}));

    const ConditionReport ic = check_imprecise_copula({lo, hi}, s_.grid, tol_);
    double worst = 0.0;
    for (const ConditionResult& c : ic.results) worst = std::min(worst, c.worst.value);
    add("imprecise-copula", marshall() ? "(C(low phi, low psi), C(up phi, up psi)) satisfies IC1-IC4"
                                       : "(C(low phi, up chi), C(up phi, low chi)) satisfies IC1-IC4",
        ic.pass(), worst);

    try {
      const CoherenceReport c = coherence_witness(g, s_.grid, tol_, 42, 8);
      add("coherence", "family bounds are attained members (Condition (C))", c.certified, -c.max_outside);
    } catch (const NotAWitness& e) {
      add("coherence", e.what(), false, -1.0);
    }
  }

  void maxmin_extras() {
    const EnvelopeFamily& g = r_.generators;
    const GridTable outer_lo = table(g.lower_bound());
    const GridTable outer_hi = table(g.upper_bound());
    const GridTable same_lo = table(r_.h_copula_low());
    const GridTable same_hi = table(r_.h_copula_up());
    add_margin("outer-containment",
               "C(low phi, up chi) <= C(low phi, low chi) and C(up phi, up chi) <= C(up phi, low chi)",
               std::min(margin(outer_lo, same_lo), margin(same_hi, outer_hi)));

    const BivariateBound ol = sklar_compose(g.lower_bound(), r_.u_box.lower(), r_.v_box.lower());
    const BivariateBound ou = sklar_compose(g.upper_bound(), r_.u_box.upper(), r_.v_box.upper());
    const GridTable tol_lo = parallel::tabulate(ol.fn(), r_.xs, r_.ys);
    const GridTable tol_hi = parallel::tabulate(ou.fn(), r_.xs, r_.ys);
    const GridTable hl = parallel::tabulate(r_.h_low().fn(), r_.xs, r_.ys);
    const GridTable hu = parallel::tabulate(r_.h_up().fn(), r_.xs, r_.ys);
    add_margin("outer-bounds", "opposite-corner H bounds enclose (lowH, upH)",
               std::min(margin(tol_lo, hl), margin(hu, tol_hi)));
    double gap = 0.0;
    for (std::size_t k = 0; k < hl.values.size(); ++k) {
      gap = std::max({gap, hl.values[k] - tol_lo.values[k], tol_hi.values[k] - hu.values[k]});
    }
    r_.outer_gap = gap;

    r_.same_corner_witnesses = search_ic_violation({r_.h_copula_low(), r_.h_copula_up()}, s_.grid, tol_);
  }

  const Scenario& s_;
  Prepared p_;
  ScenarioResult r_;
  double tol_ = kExactTol;
  std::vector<Site> sites_;
  std::vector<double> us_;
};

ScenarioResult run_checked(const Scenario& s, CopulaFamily expected) {
  if (s.model != expected) throw InvalidParameter("scenario model does not match the requested run");
  if (!s.z.is_proper()) throw NonProperInput("Z must be a proper distribution function");
  if (s.grid < 2 || s.xy_grid < 2) throw InvalidParameter("grid resolution must be at least 2");
  if (s.tol && !(*s.tol > 0.0)) throw InvalidParameter("tolerance must be positive");
  try {
    return Runner(s, Prepared{s.x, s.y, s.z, false, 0.0}).run();
  } catch (const UnsupportedSegmentPair&) {
    return Runner(s, discretized(s)).run();
  }
}

}  // namespace

ScenarioResult run_marshall(const Scenario& s) { return run_checked(s, CopulaFamily::Marshall); }
ScenarioResult run_maxmin(const Scenario& s) { return run_checked(s, CopulaFamily::Maxmin); }

ScenarioResult run_scenario(const Scenario& s) {
  return s.model == CopulaFamily::Marshall ? run_marshall(s) : run_maxmin(s);
}

}  // namespace shockcop
