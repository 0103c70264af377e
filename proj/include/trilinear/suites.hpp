#pragma once

// Seeded verification sweeps shared by the command line tool and the
// acceptance tests. Every sample draws from its own generator (seed, suite,
// index), so results do not depend on the number of workers.

#include "trilinear/families_probe.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <thread>

namespace trilinear {

struct SuiteConfig {
    std::uint64_t seed = 1;
    int jobs = 1;
    long samples = 100;
    long grid = 5;
    long lmax = 8;  // line index bound for the geometry sweep
    long kmax = 6;  // table depth
    EvalMode mode = EvalMode::Auto;
};

// Runs f(0..count-1) on up to `jobs` threads; results keep index order.
template <class F>
auto parallel_map(std::size_t count, int jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(count);
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    long prec = default_precision();
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            PrecisionScope scope(prec);
            try {
                for (std::size_t i = next++; i < count; i = next++) out[i] = f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline VerifyReport merge_all(const std::string& name, const std::vector<VerifyReport>& parts) {
    VerifyReport out{name};
    for (const auto& p : parts) out.merge(p);
    return out;
}

inline std::mt19937_64 sample_rng(std::uint64_t seed, const std::string& suite, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(std::hash<std::string>{}(suite)), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

inline Rational random_rational(std::mt19937_64& rng, long max_num = 40, long max_den = 13) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

// A rational with denominator > 2, away from every integer and half-integer lattice.
inline Rational generic_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-60, 60), den(3, 17);
    for (;;) {
        Rational r = make_rational(num(rng), den(rng));
        if (r.get_den() > 2) return r;
    }
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// ---- dimension table and symmetry ------------------------------------------

inline VerifyReport suite_table(const SuiteConfig& cfg, long nmin = 4, long nmax = 7) {
    long kmax = cfg.kmax;
    std::vector<long> ns;
    for (long n = nmin; n <= nmax; ++n) ns.push_back(n);
    auto parts = parallel_map(ns.size(), cfg.jobs, [&](std::size_t i) {
        VerifyReport rep{"table"};
        Ambient amb(static_cast<int>(ns[i]));
        SolTable t = sol_table(amb, kmax, support_and_generic_sampler(cfg.seed), kDefaultVariant, false);
        rep.checks = t.samples;
        for (const auto& c : t.cells) {
            if (c.dims.size() == 1 && c.dims.front() == c.printed) continue;
            std::string got;
            for (long d : c.dims) got += " " + std::to_string(d);
            rep.fail("n=" + std::to_string(ns[i]) + " k=" + std::to_string(c.k) + " " + c.label + " printed " +
                     std::to_string(c.printed) + " computed" + got);
        }
        if (t.samples < 200) rep.fail("n=" + std::to_string(ns[i]) + ": only " + std::to_string(t.samples) + " samples");
        return rep;
    });
    return merge_all("table", parts);
}

inline VerifyReport suite_symmetry(const SuiteConfig& cfg, long samples = 500) {
    auto parts = parallel_map(static_cast<std::size_t>(samples), cfg.jobs, [&](std::size_t i) {
        VerifyReport rep{"symmetry"};
        auto rng = sample_rng(cfg.seed, "symmetry", i);
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        long k = uniform(rng, 0, 5);
        // half of the samples on the half-integer lattice, where the special sets live
        auto pick = [&]() -> Rational {
            if (i % 2 == 0) return make_rational(uniform(rng, -2 * (k + 4), 4), 2);
            return random_rational(rng);
        };
        CRational l1(pick()), l2(pick());
        ++rep.checks;
        if (!symmetry_check(l1, l2, k, amb))
            rep.fail("n=" + std::to_string(amb.n) + " k=" + std::to_string(k) + " lambda=(" + to_string(l1) + "," +
                     to_string(l2) + ")");
        return rep;
    });
    return merge_all("symmetry", parts);
}

// ---- zero set ------------------------------------------------------------------

// A point of the line D^{eps,j}_{l,m} with free coordinate t.
inline SpectralParam point_on_line(const Line& d, const CRational& t, const Ambient& amb) {
    SpectralParam p{{}, amb};
    at(p.lambda, d.j) = CRational(-amb.rho - d.l);
    at(p.lambda, d.j + 1) = t;
    at(p.lambda, d.j + 2) = CRational(d.eps) * (CRational(d.m) - t);
    return p;
}

inline VerifyReport suite_zeroset(const SuiteConfig& cfg, long per_family = 50) {
    struct Job {
        int n, eps, j;
    };
    std::vector<Job> jobs;
    for (int n : {4, 5})
        for (int eps : {-1, 1})
            for (int j = 1; j <= 3; ++j) jobs.push_back({n, eps, j});
    auto on = parallel_map(jobs.size(), cfg.jobs, [&](std::size_t i) {
        VerifyReport rep{"zeroset"};
        const Job& job = jobs[i];
        Ambient amb(job.n);
        auto rng = sample_rng(cfg.seed, "zeroset-line", i);
        for (long s = 0; s < per_family; ++s) {
            long l = uniform(rng, 0, 6);
            long m = -l + 2 * uniform(rng, 0, l);
            Line d{job.eps, job.j, l, m};
            // mix generic free coordinates with lattice ones (points of higher strata)
            CRational t = s % 3 == 0 ? CRational(make_rational(uniform(rng, -12, 12), 2)) : CRational(random_rational(rng));
            SpectralParam p = point_on_line(d, t, amb);
            ++rep.checks;
            if (!zero_set_check(p, 5)) rep.fail("nonzero coefficient on " + to_string(d) + " n=" + std::to_string(job.n));
        }
        return rep;
    });
    // generic off-Z points: some coefficient with a <= 2 survives
    auto off = parallel_map(50, cfg.jobs, [&](std::size_t i) {
        VerifyReport rep{"zeroset"};
        auto rng = sample_rng(cfg.seed, "zeroset-off", i);
        Ambient amb(static_cast<int>(uniform(rng, 4, 5)));
        SpectralParam p{{CRational(generic_rational(rng)), CRational(generic_rational(rng)),
                         CRational(generic_rational(rng))},
                        amb};
        if (classify_stratum(p).tag != StratumTag::NotInZ) return rep;
        ++rep.checks;
        if (zero_set_check(p, 2)) rep.fail("all coefficients with a <= 2 vanish off Z");
        return rep;
    });
    // off-Z points on pole planes: the first surviving coefficient can sit beyond a = 2
    auto planes = parallel_map(50, cfg.jobs, [&](std::size_t i) {
        VerifyReport rep{"zeroset"};
        auto rng = sample_rng(cfg.seed, "zeroset-plane", i);
        Ambient amb(static_cast<int>(uniform(rng, 4, 5)));
        SpectralParam p{{CRational(random_rational(rng)), CRational(random_rational(rng)),
                         CRational(random_rational(rng))},
                        amb};
        at(p.lambda, static_cast<int>(i % 3) + 1) = CRational(-amb.rho - uniform(rng, 0, 4));
        if (classify_stratum(p).tag != StratumTag::NotInZ) return rep;
        ++rep.checks;
        if (zero_set_check(p, 12)) rep.fail("all coefficients with a <= 12 vanish off Z");
        return rep;
    });
    auto rep = merge_all("zeroset", on);
    rep.merge(merge_all("zeroset", off));
    rep.merge(merge_all("zeroset", planes));
    return rep;
}

// ---- identity suites ---------------------------------------------------------------

enum class Identity { KT, KS, RK, K0intS };

inline std::string to_string(Identity id) {
    switch (id) {
        case Identity::KT: return "kt";
        case Identity::KS: return "ks";
        case Identity::RK: return "rk";
        default: return "k0ints";
    }
}

inline VerifyReport suite_identity(Identity id, const SuiteConfig& cfg) {
    std::string name = to_string(id);
    auto parts = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.jobs, [&](std::size_t i) {
        auto rng = sample_rng(cfg.seed, name, i);
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        CRational x(random_rational(rng)), y(random_rational(rng));
        long k = uniform(rng, 0, 4);
        switch (id) {
            case Identity::KT:
                // every fifth sample puts alpha1 on a type I plane
                if (i % 5 == 0) x = CRational(Rational(-(amb.n - 1) - 2 * uniform(rng, 0, 3)));
                return verify_kt(x, y, k, cfg.grid, amb, cfg.mode);
            case Identity::KS: return verify_ks(x, y, k, cfg.grid, amb, cfg.mode);
            case Identity::RK: return verify_rk(x, y, k, cfg.grid, amb, cfg.mode);
            default: return verify_k0ints(x, y, amb, cfg.mode);
        }
    });
    return merge_all(name, parts);
}

// ---- derivative lemmas ---------------------------------------------------------------

inline std::vector<LemmaPoint> lemma_points(DerivativeLemma lemma) {
    std::vector<LemmaPoint> pts;
    switch (lemma) {
        case DerivativeLemma::DerKT:
            for (int n : {4, 5, 6})
                for (auto [k2, k3] : {std::pair{0L, 0L}, std::pair{1L, 0L}, std::pair{0L, 2L}})
                    pts.push_back({Ambient(n), make_rational(1, 3) + k2, 0, k2, k3});
            pts.push_back({Ambient(5), Rational(1), 0, 0, 0});
            pts.push_back({Ambient(5), Rational(7), 0, 1, 2});
            break;
        case DerivativeLemma::KTZ2I:
        case DerivativeLemma::DKZ2I:
            for (int n : {4, 5})
                for (auto [k1, k2, k3] : {std::tuple{1L, 0L, 1L}, std::tuple{0L, 0L, 0L}, std::tuple{2L, 1L, 2L},
                                          std::tuple{1L, 2L, 0L}, std::tuple{0L, 1L, 1L}})
                    pts.push_back({Ambient(n), Rational(0), k1, k2, k3});
            break;
        case DerivativeLemma::KSZ2II:
        case DerivativeLemma::DerKZ2II:
            for (int n : {4, 5})
                for (auto [k1, k2, k3] : {std::tuple{0L, 0L, 1L}, std::tuple{1L, 1L, 3L}, std::tuple{0L, 1L, 1L},
                                          std::tuple{1L, 0L, 3L}, std::tuple{0L, 0L, 0L}})
                    pts.push_back({Ambient(n), Rational(0), k1, k2, k3});
            break;
    }
    return pts;
}

inline VerifyReport suite_derivatives(const SuiteConfig& cfg) {
    struct Job {
        DerivativeLemma lemma;
        LemmaPoint point;
    };
    std::vector<Job> jobs;
    for (auto lemma : {DerivativeLemma::DerKT, DerivativeLemma::KTZ2I, DerivativeLemma::DKZ2I, DerivativeLemma::KSZ2II,
                       DerivativeLemma::DerKZ2II})
        for (const auto& p : lemma_points(lemma)) jobs.push_back({lemma, p});
    auto parts = parallel_map(jobs.size(), cfg.jobs, [&](std::size_t i) {
        return verify_derivative_lemma(jobs[i].lemma, jobs[i].point, cfg.grid);
    });
    return merge_all("deriv", parts);
}

// ---- Bernstein-Sato -------------------------------------------------------------------

inline VerifyReport suite_bernstein(const SuiteConfig& cfg, long per_n = 50) {
    std::vector<int> ns{4, 5, 6};
    auto parts = parallel_map(ns.size() * static_cast<std::size_t>(per_n), cfg.jobs, [&](std::size_t i) {
        auto rng = sample_rng(cfg.seed, "bernstein", i);
        Ambient amb(ns[i / static_cast<std::size_t>(per_n)]);
        GeometricParam g{{CRational(random_rational(rng)), CRational(random_rational(rng)),
                          CRational(random_rational(rng))},
                         amb};
        return verify_bernstein_chain(g);
    });
    VerifyReport rep = merge_all("bernstein", parts);
    // roots of b: alpha3 = -2, alpha3 = -(n-1), sum = -2(n-1), sum = -(n+1)
    for (int n : ns) {
        Ambient amb(n);
        auto rng = sample_rng(cfg.seed, "bernstein-roots", static_cast<std::size_t>(n));
        CRational x(random_rational(rng)), y(random_rational(rng));
        for (const CRational& a3 : {CRational(-2), CRational(-(n - 1))}) {
            ++rep.checks;
            if (!bernstein_b_exact({{x, y, a3}, amb}).is_zero()) rep.fail("b does not vanish at alpha3 root");
        }
        for (const CRational& s : {CRational(-2 * (n - 1)), CRational(-(n + 1))}) {
            ++rep.checks;
            if (!bernstein_b_exact({{x, y, s - x - y}, amb}).is_zero()) rep.fail("b does not vanish at sum root");
        }
        // alpha3 = -2 also kills the chain's left side
        rep.merge(verify_bernstein_chain({{x, y, CRational(-2)}, amb}));
    }
    return rep;
}

// ---- ranks ----------------------------------------------------------------------------

// Points of Z from lines with l <= lmax: sample points on each line and all pairwise intersections.
inline std::vector<SpectralParam> z_points(const Ambient& amb, long lmax) {
    std::vector<Line> lines;
    for (int eps : {-1, 1})
        for (int j = 1; j <= 3; ++j)
            for (long l = 0; l <= lmax; ++l)
                for (long m = -l; m <= l; m += 2) lines.push_back({eps, j, l, m});
    std::vector<SpectralParam> pts;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (long t = -4; t <= 4; ++t) {
            pts.push_back(point_on_line(lines[i], CRational(t), amb));
            pts.push_back(point_on_line(lines[i], CRational(make_rational(2 * t + 1, 3)), amb));
        }
        for (std::size_t k = i + 1; k < lines.size(); ++k)
            if (auto q = intersect_lines(lines[i], lines[k], amb)) pts.push_back(*q);
    }
    return pts;
}

inline std::string stratum_key(const SpectralParam& p) {
    Stratum s = classify_stratum(p);
    std::string key = to_string(s.tag);
    if (!s.witness.variant.empty()) key += "/" + s.witness.variant;
    return key;
}

// Witness points per stratum/parity combination, smallest integer data first.
inline std::map<std::string, std::vector<SpectralParam>> rank_witnesses(long per_key) {
    std::map<std::string, std::vector<std::pair<long, SpectralParam>>> buckets;
    for (int n : {4, 5}) {
        Ambient amb(n);
        for (const auto& p : z_points(amb, 3)) {
            Stratum s = classify_stratum(p);
            if (s.tag == StratumTag::NotInZ) continue;
            GeneratorSet gs = generators(p);
            buckets[stratum_key(p)].emplace_back(gs.k_sum, p);
        }
    }
    std::map<std::string, std::vector<SpectralParam>> out;
    for (auto& [key, list] : buckets) {
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::set<std::string> seen;
        for (const auto& [ks, p] : list) {
            std::string id = std::to_string(p.ambient.n) + ":" + to_string(p.lambda[0]) + "," + to_string(p.lambda[1]) +
                             "," + to_string(p.lambda[2]);
            if (!seen.insert(id).second) continue;
            out[key].push_back(p);
            if (static_cast<long>(out[key].size()) >= per_key) break;
        }
    }
    return out;
}

inline const std::vector<std::string>& required_rank_keys() {
    static const std::vector<std::string> keys{"Z1_I/general", "Z1_I/special", "Z1_II/general", "Z1_II/special",
                                               "Z2_I",         "Z2_II/odd",    "Z2_II/even",    "Z3/odd",
                                               "Z3/even"};
    return keys;
}

inline VerifyReport suite_ranks(const SuiteConfig& cfg, long per_key = 3) {
    auto witnesses = rank_witnesses(per_key);
    VerifyReport rep{"ranks"};
    std::vector<std::pair<std::string, SpectralParam>> jobs;
    for (const auto& key : required_rank_keys()) {
        auto it = witnesses.find(key);
        long have = it == witnesses.end() ? 0 : static_cast<long>(it->second.size());
        if (have < per_key) rep.fail("only " + std::to_string(have) + " witness points for " + key);
        if (it != witnesses.end())
            for (const auto& p : it->second) jobs.emplace_back(key, p);
    }
    auto parts = parallel_map(jobs.size(), cfg.jobs, [&](std::size_t i) {
        VerifyReport r{"ranks"};
        const auto& [key, p] = jobs[i];
        GeneratorSet gs = generators(p);
        long bound = gs.k_sum + 6;
        RankReport rr = rank_check(gs.families, gs.point, bound);
        long expected = dim_tri(p);
        ++r.checks;
        std::string where = key + " n=" + std::to_string(p.ambient.n) + " lambda=(" + to_string(p.lambda[0]) + "," +
                            to_string(p.lambda[1]) + "," + to_string(p.lambda[2]) + ")";
        if (rr.rank != expected)
            r.fail(where + ": rank " + std::to_string(rr.rank) + " vs dim_tri " + std::to_string(expected));
        // monotone in the grid bound
        RankReport smaller = rank_check(gs.families, gs.point, std::max(0L, bound - 2));
        ++r.checks;
        if (smaller.rank > rr.rank) r.fail(where + ": rank decreased as the grid grew");
        // diagonal multiplicity never exceeds the full one
        ++r.checks;
        if (dim_tri_diag(p) > expected) r.fail(where + ": dim_tri_diag exceeds dim_tri");
        return r;
    });
    rep.merge(merge_all("ranks", parts));
    return rep;
}

// Exhaustive vanishing laws: T~ (a_slot > k), S (sum a > k), Q (its index region).
inline VerifyReport suite_vanishing(const SuiteConfig& cfg, long kmax = 5, long amax = 10) {
    VerifyReport rep{"vanishing"};
    auto rng = sample_rng(cfg.seed, "vanishing", 0);
    Ambient amb(5);
    CRational x(generic_rational(rng)), y(generic_rational(rng)), z(generic_rational(rng));
    auto cube = grid(amax);
    auto parts = parallel_map(static_cast<std::size_t>(kmax + 1), cfg.jobs, [&](std::size_t kk) {
        VerifyReport r{"vanishing"};
        long k = static_cast<long>(kk);
        SpectralParam p{{x, y, CRational(-amb.rho - 2 * k) - x - y}, amb};
        for (const auto& a : cube) {
            bool t_zero = is_zero(ttilde_coeff(3, k, {x, z}, amb, a));
            ++r.checks;
            if (t_zero != (a.a3 > k)) r.fail("T~ law at k=" + std::to_string(k) + " a=" + to_string(a));
            bool s_zero = is_zero(s_coeff(k, p, a));
            ++r.checks;
            if (s_zero != (a.sum() > k)) r.fail("S law at k=" + std::to_string(k) + " a=" + to_string(a));
        }
        // Q over every (k1, k2, k3) with k2 = k, k3 <= kmax, k1 <= k2 + k3 (capped at kmax)
        for (long k3 = 0; k3 <= kmax; ++k3)
            for (long k1 = 0; k1 <= std::min(kmax, k + k3); ++k1) {
                Z2IIndices zi{k1, k, k3};
                for (const auto& a : cube) {
                    bool inside = a.a2 + a.a3 > k + k3 && (a.a2 <= k || a.a3 <= k3);
                    bool q_zero = is_zero(q_coeff(zi, amb, a));
                    ++r.checks;
                    if (!inside && !q_zero) r.fail("Q nonzero outside its region at a=" + to_string(a));
                    // inside the region Q is nonzero once a1 clears the reciprocal Gamma zeros
                    bool large = Rational(a.a1) + amb.rho + std::min(zi.m2() + a.a3, zi.m3() + a.a2) > 0;
                    if (inside && large && q_zero) r.fail("Q vanishes inside its region at a=" + to_string(a));
                }
            }
        return r;
    });
    rep.merge(merge_all("vanishing", parts));
    return rep;
}

// ---- oracles ---------------------------------------------------------------------------

inline VerifyReport suite_oracles(const SuiteConfig& cfg) {
    std::vector<LemmaPoint> qpts;
    for (int n : {4, 5, 6})
        for (long k2 = 0; k2 <= 2; ++k2)
            for (long k3 = 0; k3 <= 2; ++k3)
                for (long k1 = 0; k1 <= k2 + k3; k1 += 1 + (k2 + k3) / 2) qpts.push_back({Ambient(n), 0, k1, k2, k3});
    auto parts = parallel_map(qpts.size(), cfg.jobs, [&](std::size_t i) { return verify_q_oracle(qpts[i], cfg.grid); });
    VerifyReport rep = merge_all("oracles", parts);
    // F1 pattern at n = 5 with k_i <= 1
    Ambient amb(5);
    for (long k1 = 0; k1 <= 1; ++k1)
        for (long k2 = 0; k2 <= 1; ++k2)
            for (long k3 = 0; k3 <= 1; ++k3) {
                GeometricParam g{{CRational(-4 - 2 * k1), CRational(-4 - 2 * k2), CRational(-4 - 2 * k3)}, amb};
                long bound = 2 * (k1 + k2 + k3) + 5;
                F1Report f = f1_jet_vanishing_check(to_spectral(g), bound);
                rep.checks += f.checks;
                if (!f.ok()) {
                    rep.failures += std::max(1L, f.failures);
                    for (const auto& d : f.details)
                        if (rep.details.size() < 20) rep.details.push_back(d);
                }
            }
    return rep;
}

// ---- geometry ------------------------------------------------------------------------------

namespace detail {

// Intersection of two lines by exact elimination of the 4x3 system in lambda.
inline std::optional<Triple> solve_line_pair(const Line& a, const Line& b, const Ambient& amb) {
    std::vector<std::vector<CRational>> m;
    auto add_line = [&](const Line& d) {
        std::vector<CRational> r1(4), r2(4);
        r1[static_cast<std::size_t>(d.j - 1)] = CRational(1);
        r1[3] = CRational(-amb.rho - d.l);
        r2[static_cast<std::size_t>(slot(d.j + 1) - 1)] = CRational(1);
        r2[static_cast<std::size_t>(slot(d.j + 2) - 1)] = CRational(d.eps);
        r2[3] = CRational(d.m);
        m.push_back(r1);
        m.push_back(r2);
    };
    add_line(a);
    add_line(b);
    // Gauss-Jordan on the augmented matrix
    std::size_t row = 0;
    std::vector<int> pivot_col;
    for (std::size_t c = 0; c < 3 && row < 4; ++c) {
        std::size_t p = row;
        while (p < 4 && m[p][c].is_zero()) ++p;
        if (p == 4) continue;
        std::swap(m[p], m[row]);
        CRational inv = CRational(1) / m[row][c];
        for (auto& x : m[row]) x = x * inv;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == row || m[i][c].is_zero()) continue;
            CRational f = m[i][c];
            for (std::size_t j = 0; j < 4; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    for (std::size_t i = row; i < 4; ++i)
        if (!m[i][3].is_zero()) return std::nullopt;  // inconsistent
    if (pivot_col.size() < 3) return std::nullopt;     // same line
    Triple t;
    for (std::size_t i = 0; i < 3; ++i) t[static_cast<std::size_t>(pivot_col[i])] = m[i][3];
    return t;
}

inline long brute_force_line_count(const SpectralParam& p, long lmax, std::vector<Line>* found = nullptr) {
    long count = 0;
    for (int eps : {-1, 1})
        for (int j = 1; j <= 3; ++j)
            for (long l = 0; l <= lmax; ++l)
                for (long m = -l; m <= l; m += 2) {
                    Line d{eps, j, l, m};
                    if (line_contains(d, p)) {
                        ++count;
                        if (found) found->push_back(d);
                    }
                }
    return count;
}

inline StratumTag tag_from_lines(const std::vector<Line>& lines) {
    long one = 0, two = 0;
    for (const auto& d : lines) (d.type_one() ? one : two) += 1;
    switch (lines.size()) {
        case 0: return StratumTag::NotInZ;
        case 1: return one ? StratumTag::Z1_I : StratumTag::Z1_II;
        case 2: return one == 1 ? StratumTag::Z2_I : (two == 2 ? StratumTag::Z2_II : StratumTag::Z3);
        default: return StratumTag::Z3;
    }
}

}  // namespace detail

inline VerifyReport suite_geometry(const SuiteConfig& cfg, long closed_form_points = 10000) {
    VerifyReport rep{"geometry"};
    long lmax = cfg.lmax;
    for (int n : {4, 5}) {
        Ambient amb(n);
        std::vector<Line> lines;
        for (int eps : {-1, 1})
            for (int j = 1; j <= 3; ++j)
                for (long l = 0; l <= lmax; ++l)
                    for (long m = -l; m <= l; m += 2) lines.push_back({eps, j, l, m});
        auto parts = parallel_map(lines.size(), cfg.jobs, [&](std::size_t i) {
            VerifyReport r{"geometry"};
            const Line& a = lines[i];
            for (std::size_t k = i + 1; k < lines.size(); ++k) {
                const Line& b = lines[k];
                auto brute = detail::solve_line_pair(a, b, amb);
                auto fast = intersect_lines(a, b, amb);
                ++r.checks;
                if (brute.has_value() != fast.has_value() || (brute && !(*brute == fast->lambda)))
                    r.fail("intersection mismatch " + to_string(a) + " & " + to_string(b));
                if (!brute) continue;
                // forbidden: type I_j with type II_j' for j != j', and equal types in the same slot
                bool forbidden = (a.type_one() != b.type_one() && a.j != b.j) ||
                                 (a.type_one() == b.type_one() && a.j == b.j);
                ++r.checks;
                if (forbidden) r.fail("forbidden intersection " + to_string(a) + " & " + to_string(b));
                // no point on four lines; the coordinates bound l by 3 lmax
                std::vector<Line> through;
                long count = detail::brute_force_line_count({*brute, amb}, 3 * lmax + 4, &through);
                ++r.checks;
                if (count > 3) r.fail("point on " + std::to_string(count) + " lines");
                ++r.checks;
                if (through != lines_through({*brute, amb})) r.fail("lines_through disagrees with brute force");
            }
            return r;
        });
        rep.merge(merge_all("geometry", parts));
    }
    // closed-form stratum conditions against line counting
    auto parts = parallel_map(static_cast<std::size_t>(closed_form_points), cfg.jobs, [&](std::size_t i) {
        VerifyReport r{"geometry"};
        auto rng = sample_rng(cfg.seed, "geometry", i);
        Ambient amb(static_cast<int>(uniform(rng, 4, 7)));
        SpectralParam p{{}, amb};
        long mode = static_cast<long>(i % 4);
        if (mode == 0) {
            // lattice points: half-integers in a box
            for (auto& x : p.lambda) x = CRational(make_rational(uniform(rng, -24, 8), 2));
        } else if (mode == 1) {
            int eps = uniform(rng, 0, 1) ? 1 : -1;
            long l = uniform(rng, 0, lmax);
            Line d{eps, static_cast<int>(uniform(rng, 1, 3)), l, -l + 2 * uniform(rng, 0, l)};
            p = point_on_line(d, CRational(make_rational(uniform(rng, -12, 12), uniform(rng, 1, 3))), amb);
        } else if (mode == 2) {
            // intersections of random line pairs
            auto random_line = [&] {
                long l = uniform(rng, 0, lmax);
                return Line{uniform(rng, 0, 1) ? 1 : -1, static_cast<int>(uniform(rng, 1, 3)), l,
                            -l + 2 * uniform(rng, 0, l)};
            };
            std::optional<SpectralParam> q;
            for (int tries = 0; tries < 200 && !q; ++tries) q = intersect_lines(random_line(), random_line(), amb);
            if (!q) return r;
            p = *q;
        } else {
            for (auto& x : p.lambda) x = CRational(random_rational(rng));
        }
        std::vector<Line> through;
        detail::brute_force_line_count(p, 40, &through);
        StratumTag brute = detail::tag_from_lines(through);
        ++r.checks;
        if (classify_closed_form(to_geometric(p)) != brute)
            r.fail("closed form " + std::string(to_string(classify_closed_form(to_geometric(p)))) + " vs lines " +
                   to_string(brute));
        ++r.checks;
        if (classify_stratum(p).tag != brute) r.fail("classify_stratum disagrees with brute force");
        return r;
    });
    rep.merge(merge_all("geometry", parts));
    return rep;
}

// ---- dispatch ------------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"table", "symmetry", "zeroset", "kt",     "ks",       "rk",
                                                "k0ints", "deriv",   "bernstein", "ranks", "vanishing", "oracles",
                                                "geometry"};
    return names;
}

inline VerifyReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "table") return suite_table(cfg);
    if (name == "symmetry") return suite_symmetry(cfg);
    if (name == "zeroset") return suite_zeroset(cfg);
    if (name == "kt") return suite_identity(Identity::KT, cfg);
    if (name == "ks") return suite_identity(Identity::KS, cfg);
    if (name == "rk") return suite_identity(Identity::RK, cfg);
    if (name == "k0ints") return suite_identity(Identity::K0intS, cfg);
    if (name == "deriv") return suite_derivatives(cfg);
    if (name == "bernstein") return suite_bernstein(cfg);
    if (name == "ranks") return suite_ranks(cfg);
    if (name == "vanishing") return suite_vanishing(cfg);
    if (name == "oracles") return suite_oracles(cfg);
    if (name == "geometry") return suite_geometry(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace trilinear
