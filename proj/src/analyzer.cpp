#include "crossed/analyzer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace crossed {

namespace {

bool is_p_group(const Subgroup& h, uint32_t p) {
  for (int a : h.elems) {
    int ord = h.parent->element_order(a);
    while (ord > 1) {
      if (ord % (int)p != 0) return false;
      ord /= (int)p;
    }
  }
  return true;
}

std::vector<uint64_t> divisors_descending(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// validation

ValidationReport validate_scenario(const RamifiedScenario& s) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back(msg);
  };

  if (s.cocycle.group.get() != s.group.get()) {
    fail("cocycle lives on a different group");
    return rep;
  }
  if (s.action.group.get() != s.group.get()) {
    fail("action lives on a different group");
    return rep;
  }
  if (!s.field->same(*s.action.field)) {
    fail("action targets a different field");
    return rep;
  }
  if (s.cocycle.action.frob != s.action.frob) {
    fail("cocycle action differs from the scenario action");
    return rep;
  }
  auto cv = validate_cocycle(s.cocycle);
  if (!cv.ok) fail("cocycle invalid: " + cv.message);

  Subgroup inertia = kernel_of_action(s.action);
  // the ramification character is defined exactly on the inertia subgroup
  for (int g : inertia.elems) {
    if (!s.character.count(g)) {
      fail("ramification character missing on inertia element " + s.group->label(g));
    }
  }
  for (const auto& [g, v] : s.character) {
    if (!inertia.contains(g)) {
      fail("ramification character defined outside the inertia subgroup at " +
           s.group->label(g));
    }
    if (!v.valid() || v.is_zero()) fail("ramification character value is not a unit");
    if (v.valid() && !v.is_zero() && !v.field()->same(*s.field)) {
      fail("ramification character value lies in a different field");
    }
  }
  if (!rep.valid) return rep;

  // homomorphism on the inertia
  for (int a : inertia.elems) {
    for (int b : inertia.elems) {
      if (!(s.character.at(s.group->mul(a, b)) == s.character.at(a) * s.character.at(b))) {
        fail("ramification character is not a homomorphism (at " + s.group->label(a) + ", " +
             s.group->label(b) + ")");
        goto after_hom;
      }
    }
  }
after_hom:
  if (!rep.valid) return rep;

  const uint32_t p = s.field->characteristic();
  {
    std::vector<int> ker;
    for (int a : inertia.elems) {
      if (s.character.at(a).is_one()) ker.push_back(a);
    }
    Subgroup kernel{s.group, ker};
    if (!is_subgroup(kernel)) {
      fail("character kernel is not a subgroup");
    } else if (!is_p_group(kernel, p)) {
      fail("character kernel is not a p-group");
    }
    // image order prime to p (automatic over a field of characteristic p,
    // kept as an explicit guard)
    std::set<uint64_t> image;
    bool image_ok = true;
    for (int a : inertia.elems) {
      const auto& v = s.character.at(a);
      uint64_t ord = multiplicative_order(v);
      if (ord == 0) {
        fail("ramification character value of infinite order at " + s.group->label(a));
        image_ok = false;
        break;
      }
      image.insert(s.field->finite() ? s.field->index_of(v) : ord * 100000 + 0);
    }
    if (image_ok) {
      uint64_t e0 = inertia.order() / std::max<size_t>(ker.size(), 1);
      if (e0 % p == 0) fail("image order not prime to p");
      // a primitive e0-th root of unity must exist: the image provides one
      bool has_gen = false;
      for (int a : inertia.elems) {
        if (multiplicative_order(s.character.at(a)) == e0) has_gen = true;
      }
      if (!has_gen && e0 > 1) fail("character image is not cyclic of the expected order");
    }
  }

  // equivariance with the field action
  for (int g = 0; g < s.group->order(); ++g) {
    for (int a : inertia.elems) {
      int conj = s.group->conjugate(g, a);
      if (!inertia.contains(conj)) {
        fail("inertia is not normal under conjugation");  // cannot happen: kernel
        continue;
      }
      if (!(s.character.at(conj) == s.action.act(g, s.character.at(a)))) {
        fail("ramification character is not equivariant (at g=" + s.group->label(g) +
             ", sigma=" + s.group->label(a) + ")");
        goto after_eq;
      }
    }
  }
after_eq:
  return rep;
}

// ---------------------------------------------------------------------------
// inertia split

InertiaSplit inertia_split(const RamifiedScenario& s) {
  InertiaSplit out;
  out.inertia = kernel_of_action(s.action);
  const uint32_t p = s.field->characteristic();

  std::vector<int> ker;
  for (int a : out.inertia.elems) {
    if (s.character.at(a).is_one()) ker.push_back(a);
  }
  out.P = Subgroup{s.group, ker};
  CROSSED_CHECK(is_subgroup(out.P), "character kernel must be a subgroup");
  out.e0 = (uint64_t)out.inertia.order() / (uint64_t)out.P.order();
  out.tame = out.inertia.order() % (int)p != 0;

  // deterministic generator of the image: the least unit of full order
  std::optional<FieldElement> zeta;
  for (int a : out.inertia.elems) {
    const auto& v = s.character.at(a);
    if (multiplicative_order(v) == out.e0) {
      if (!zeta || canonical_less(v, *zeta)) zeta = v;
    }
  }
  CROSSED_CHECK(zeta.has_value(), "character image has no generator");

  if (is_abelian(out.inertia)) {
    Subgroup c = p_prime_torsion(out.inertia, p);
    CROSSED_CHECK((uint64_t)c.order() == out.e0,
                  "prime-to-p part must map isomorphically onto the character image");
    int sigma0 = -1;
    for (int a : c.elems) {
      if (s.character.at(a) == *zeta) {
        sigma0 = a;
        break;
      }
    }
    CROSSED_CHECK(sigma0 >= 0, "no preimage of the image generator in the complement");
    out.sigma0 = sigma0;
    out.C = c;
  } else {
    // non-abelian inertia: the verdict below will be negative; still return a
    // deterministic choice
    int sigma0 = -1;
    for (int a : out.inertia.elems) {
      if (s.character.at(a) == *zeta && (uint64_t)s.group->element_order(a) == out.e0) {
        sigma0 = a;
        break;
      }
    }
    if (sigma0 < 0) {
      for (int a : out.inertia.elems) {
        if (s.character.at(a) == *zeta) {
          sigma0 = a;
          break;
        }
      }
    }
    CROSSED_CHECK(sigma0 >= 0, "no preimage of the image generator");
    out.sigma0 = sigma0;
    out.C = subgroup_generated(s.group, {sigma0});
  }
  return out;
}

// ---------------------------------------------------------------------------
// heredity

HeredityResult heredity_verdict(const RamifiedScenario& s, const InertiaSplit& split) {
  HeredityResult out;
  out.tame = split.tame;
  const uint32_t p = s.field->characteristic();

  if (split.tame) {
    out.hereditary = true;
    out.evidence = "tame: |inertia| is prime to p, Maschke applies";
  } else {
    if (!is_abelian(split.P)) {
      out.hereditary = false;
      out.evidence = "wild part of the inertia is non-abelian; its twisted algebra is not a field";
      return out;
    }
    auto basis = abelian_cyclic_basis(split.P);
    auto restricted = restrict_cocycle(s.cocycle, split.P);
    std::vector<std::pair<int, int>> local_basis;
    for (auto& [g, o] : basis) local_basis.push_back({restricted.embed.from_parent[g], o});
    InsepResult ins = purely_inseparable_field_test(restricted.cocycle, local_basis);
    out.hereditary = ins.is_field;
    out.tower = ins.tower;
    if (ins.is_field) {
      out.evidence = "wild part generates a purely inseparable field extension";
    } else if (ins.noncommuting) {
      out.evidence = "basis units of the wild part do not commute";
      out.witness = ins.witness->str();
    } else {
      out.evidence = "wild part splits: nilpotent witness found";
      out.witness = ins.witness->str();
    }
  }

  if (out.hereditary) {
    // structural consequences; violations would be bugs, never verdicts
    CROSSED_CHECK(is_abelian(split.inertia), "hereditary verdict with non-abelian inertia");
    CROSSED_CHECK(internal_direct_product_check(split.inertia, split.P, split.C),
                  "hereditary verdict without direct inertia splitting");
    // U_sigma0 is central in the inertia subalgebra and the subalgebra is
    // commutative with U_sigma0^e0 scalar
    for (int a : split.inertia.elems) {
      for (int b : split.inertia.elems) {
        CROSSED_CHECK(s.cocycle.val[a][b] == s.cocycle.val[b][a],
                      "inertia subalgebra fails to be commutative");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gamma and conductor

GammaData gamma_f(const RamifiedScenario& s, const InertiaSplit& split) {
  GammaData out;
  out.alpha0 = s.cocycle.unit_power_coeff(split.sigma0, (uint32_t)split.e0);
  for (uint64_t d : divisors_descending(split.e0)) {
    if (nth_root(out.alpha0, d)) {
      out.d = d;
      break;
    }
  }
  out.c = split.e0 / out.d;
  int gen = s.group->power(split.sigma0, (int64_t)out.c);
  out.gamma = subgroup_generated(s.group, {gen});
  CROSSED_CHECK((uint64_t)out.gamma.order() == out.d, "gamma subgroup has the wrong order");
  return out;
}

namespace {

ConductorData conductor_data(const RamifiedScenario& s, const InertiaSplit& split,
                             const GammaData& gamma, const AnalyzeOptions& opts,
                             std::vector<std::string>& notes) {
  ConductorData out;
  const Subgroup& A = gamma.gamma;
  auto norm = normalize_on_cyclic_subgroup(s.cocycle, A);

  // the action of the quotient on the characters of A must be trivial
  auto chars = character_group(A, s.field);
  Quotient q = quotient_group(s.group, A);
  for (size_t c = 0; c < q.rep.size(); ++c) {
    for (const auto& chi : chars) {
      if (!(twist_character(chi, q.rep[c], s.action) == chi)) {
        throw invalid_input(
            "action on characters nontrivial; scenario outside analyzer scope");
      }
    }
  }

  PiMap pm = pi_map(norm.cocycle, A);
  // with the trivial character action the 1-cocycle is a homomorphism
  for (size_t cx = 0; cx < q.rep.size(); ++cx) {
    for (size_t cy = 0; cy < q.rep.size(); ++cy) {
      int xy = s.group->mul(q.rep[cx], q.rep[cy]);
      CROSSED_CHECK(pm.at(xy) == pm.chi[cx].times(pm.chi[cy]),
                    "pi is not a homomorphism despite the trivial character action");
    }
  }

  // image subgroup of the character group, deterministic order
  std::vector<Character> image;
  for (const auto& chi : pm.chi) {
    bool seen = false;
    for (const auto& x : image) seen = seen || x == chi;
    if (!seen) image.push_back(chi);
  }
  // closure (the image of a homomorphism is already closed; keep the check)
  for (const auto& x : image) {
    for (const auto& y : image) {
      auto p2 = x.times(y);
      bool seen = false;
      for (const auto& z : image) seen = seen || z == p2;
      CROSSED_CHECK(seen, "pi image is not closed under products");
    }
  }
  out.pi_image = image;
  out.pi_image_order = image.size();

  std::vector<int> hf;
  for (int a : A.elems) {
    bool all_one = true;
    for (const auto& chi : image) all_one = all_one && chi.eval(a).is_one();
    if (all_one) hf.push_back(a);
  }
  out.conductor = Subgroup{s.group, hf};
  CROSSED_CHECK(is_subgroup(out.conductor), "conductor is not a subgroup");

  CROSSED_CHECK(gamma.d % out.pi_image_order == 0, "pi image order does not divide d");
  out.component_count = gamma.d / out.pi_image_order;
  CROSSED_CHECK((uint64_t)out.conductor.order() == out.component_count,
                "conductor order differs from the component count");

  // idempotent family and the translation action on it
  int gen = s.group->power(split.sigma0, (int64_t)gamma.c);
  out.zeta_d = opts.zeta_override
                   ? *opts.zeta_override
                   : (gamma.d == 1 ? s.field->one()
                                   : primitive_root_of_unity(s.field, gamma.d));
  if (gamma.d > 1) {
    CROSSED_CHECK(multiplicative_order(out.zeta_d) == gamma.d,
                  "zeta override must have exact order d");
  }
  auto alg = CrossedProduct::make(norm.cocycle);
  auto iotas = iota_idempotents(alg, gen, (int)gamma.d, out.zeta_d);
  // characters in iota order: chi_j(gen^l) = zeta^(jl)
  std::vector<Character> chi_by_j;
  for (uint64_t j = 0; j < gamma.d; ++j) {
    Character chi{s.group, A.elems, {}};
    for (int a : A.elems) {
      // a = gen^l
      int cur = s.group->identity();
      int l = 0;
      while (cur != a) {
        cur = s.group->mul(cur, gen);
        ++l;
      }
      chi.values.push_back(pow(out.zeta_d, (int64_t)(j * (uint64_t)l)));
    }
    chi_by_j.push_back(std::move(chi));
  }
  auto find_iota = [&](const AlgebraElement& x) {
    for (size_t j = 0; j < iotas.size(); ++j) {
      if (iotas[j] == x) return (int)j;
    }
    return -1;
  };
  auto find_chi = [&](const Character& chi) {
    for (size_t j = 0; j < chi_by_j.size(); ++j) {
      if (chi_by_j[j] == chi) return (int)j;
    }
    return -1;
  };
  // conjugation acts as translation by pi; orbits all have equal size
  std::vector<int> orbit_of(iotas.size(), -1);
  for (size_t c = 0; c < q.rep.size(); ++c) {
    int g = q.rep[c];
    for (size_t j = 0; j < iotas.size(); ++j) {
      auto conj = alg->conjugate_by_unit(g, iotas[j]);
      int j2 = find_iota(conj);
      CROSSED_CHECK(j2 >= 0, "conjugation left the idempotent family");
      int expect = find_chi(chi_by_j[j].times(pm.chi[c]));
      CROSSED_CHECK(expect == j2, "conjugation is not translation by pi");
    }
  }
  // orbits under the translation action of the image
  int next_orbit = 0;
  for (size_t j = 0; j < iotas.size(); ++j) {
    if (orbit_of[j] >= 0) continue;
    std::vector<int> orbit;
    for (const auto& chi : image) {
      int j2 = find_chi(chi_by_j[j].times(chi));
      CROSSED_CHECK(j2 >= 0, "translation left the character family");
      if (orbit_of[j2] < 0) {
        orbit_of[j2] = next_orbit;
        orbit.push_back(j2);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(orbit);
    ++next_orbit;
  }
  for (const auto& orb : out.orbits) {
    CROSSED_CHECK(orb.size() == image.size(), "orbit sizes are not all equal");
  }
  CROSSED_CHECK(out.orbits.size() == out.component_count,
                "orbit count differs from the component count");
  for (const auto& io : iotas) out.idempotent_strs.push_back(io.str());
  notes.push_back("idempotent family verified: complete, orthogonal, translation by pi");
  return out;
}

}  // namespace

Subgroup conductor_by_inflation_search(const RamifiedScenario& s, uint64_t budget) {
  Subgroup inertia = kernel_of_action(s.action);
  EmbeddedGroup emb = as_group(inertia);
  std::vector<Subgroup> maximal;
  // all subgroups of the inertia that are normal in G, largest first
  std::vector<Subgroup> candidates;
  for (const auto& sub_local : enumerate_all_subgroups(emb.group)) {
    std::vector<int> elems;
    for (int x : sub_local.elems) elems.push_back(emb.to_parent[x]);
    std::sort(elems.begin(), elems.end());
    Subgroup h{s.group, elems};
    if (is_normal(h)) candidates.push_back(h);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });
  std::vector<Subgroup> inflated;
  for (const auto& h : candidates) {
    if (brute_force_inflation_witness(s.cocycle, h, budget)) inflated.push_back(h);
  }
  CROSSED_CHECK(!inflated.empty(), "the trivial subgroup always admits inflation");
  // maximal elements under inclusion
  for (const auto& h : inflated) {
    bool dominated = false;
    for (const auto& k : inflated) {
      if (k.order() > h.order() &&
          std::includes(k.elems.begin(), k.elems.end(), h.elems.begin(), h.elems.end())) {
        dominated = true;
      }
    }
    if (!dominated) maximal.push_back(h);
  }
  CROSSED_CHECK(maximal.size() == 1, "inflation-maximal subgroup is not unique");
  return maximal[0];
}

// ---------------------------------------------------------------------------
// the full pipeline

AnalysisReport analyze(const RamifiedScenario& s, const AnalyzeOptions& opts) {
  AnalysisReport rep;
  rep.field_name = s.field->name();

  auto v = validate_scenario(s);
  if (!v.valid) {
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& m : v.violations) os << "\n  - " << m;
    throw invalid_input(os.str());
  }

  rep.split = inertia_split(s);
  if (opts.sigma0_label) {
    auto idx = s.group->index_of_label(*opts.sigma0_label);
    if (!idx) throw invalid_input("sigma0 override: unknown element label");
    if (!rep.split.inertia.contains(*idx)) {
      throw invalid_input("sigma0 override must lie in the inertia subgroup");
    }
    if ((uint64_t)s.group->element_order(*idx) != rep.split.e0 ||
        multiplicative_order(s.character.at(*idx)) != rep.split.e0) {
      throw invalid_input("sigma0 override must generate the prime-to-p part");
    }
    rep.split.sigma0 = *idx;
    rep.split.C = subgroup_generated(s.group, {*idx});
    rep.notes.push_back("sigma0 choice overridden to " + *opts.sigma0_label);
  }

  rep.heredity = heredity_verdict(s, rep.split);
  if (!rep.heredity.hereditary) {
    rep.maximal = false;
    rep.notes.push_back("maximal order count: n/a (not hereditary)");
    return rep;
  }

  rep.gamma = gamma_f(s, rep.split);
  rep.conductor = conductor_data(s, rep.split, *rep.gamma, opts, rep.notes);
  rep.maximal_order_count = rep.conductor->conductor.order();
  rep.maximal = *rep.maximal_order_count == 1;

  if (s.field->finite()) {
    auto alg = CrossedProduct::make(s.cocycle);
    rep.oracle_component_count = count_simple_components_oracle(alg);
    CROSSED_CHECK((uint64_t)*rep.oracle_component_count == rep.conductor->component_count,
                  "center-splitting oracle disagrees with the component count");
  }
  if (opts.with_inflation_oracle) {
    Subgroup hf_def = conductor_by_inflation_search(s, opts.oracle_budget);
    rep.oracle_conductor_order = hf_def.order();
    CROSSED_CHECK(hf_def.elems == rep.conductor->conductor.elems,
                  "inflation-defined conductor disagrees with the pairing kernel");
  }
  return rep;
}

}  // namespace crossed
