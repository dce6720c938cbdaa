// Bounded-orbit synthesis under a cocycle covering certificate: the explicit
// Hölder perturbation budget, the nested-cylinder greedy builder, two-sided
// bounds through periodic extraction, a brute-force oracle, and the
// rotate-and-stretch attack that destroys boundedness along a fixed orbit.

#pragma once

#include <optional>
#include <sstream>

#include "qcorbit/covering.hpp"

namespace qcorbit {

// --- perturbation budget ------------------------------------------------------

struct EpsilonBudget {
    double epsilon = 0.0;  // admissible C^alpha perturbation radius
    // constants ledger
    double delta = 0.0;
    double k_u = 0.0;    // max ||D^{+-1}|| over the closed region
    int big_l = 0;       // max transition length
    double alpha = 0.0;
    double a_norm = 0.0;  // sup ||A||
    int depth = 0;        // k
    int dim = 0;
    double prior = 0.0;   // eps_0 used inside C
    double c = 0.0;       // assembled constant, epsilon = delta / C
};

// epsilon = delta / C with
//   C = K_U (||A||+e0)^{kd} [ (L+k)(||A||+e0)^{L+k-1}
//                             + (1-2^{-alpha})^{-1} (||A||+e0)^{L-1} K_U^3 ],
// the ||B_{n_j-k}|| bound carried through both terms of the induction step;
// the prior e0 must dominate the resulting epsilon, which is re-checked (and
// the prior enlarged once) after assembly.
inline EpsilonBudget epsilon_budget(const Cocycle& a, const CocycleCoveringCertificate& cert,
                                    double alpha) {
    if (alpha <= 0.0) throw Error(ErrorKind::BadInput, "alpha must be positive");
    EpsilonBudget b;
    b.delta = cert.delta;
    b.k_u = region_k_bound(cert.region, a.tolerances());
    b.big_l = cert.max_transition_length;
    b.alpha = alpha;
    b.a_norm = a.sup_norm();
    b.depth = a.depth();
    b.dim = a.dim();
    auto assemble = [&](double prior) {
        b.prior = prior;
        const double an = std::max(b.a_norm + prior, 1.0);
        const double geo = 1.0 / (1.0 - std::pow(2.0, -alpha));
        const double lk = static_cast<double>(b.big_l + b.depth);
        b.c = b.k_u * std::pow(an, b.depth * b.dim) *
              (lk * std::pow(an, b.big_l + b.depth - 1) +
               geo * std::pow(an, b.big_l - 1) * b.k_u * b.k_u * b.k_u);
        b.epsilon = b.delta / b.c;
    };
    assemble(std::min(1.0, b.delta));
    if (b.epsilon > b.prior) assemble(1.0);
    if (!(b.epsilon > 0.0) || b.epsilon > b.prior)
        throw Error(ErrorKind::DegenerateBudget, "delta too small for a consistent budget");
    return b;
}

// --- plans --------------------------------------------------------------------

struct OrbitPlan {
    int window_half_width = 0;  // k of the certified cocycle
    Word core{1};               // occupies positions -k .. n_J + k
    Word left_period{1};
    Word right_period{1};  // current marked word's period (canonical completion)
    std::vector<Word> transitions;
    std::vector<long long> times;    // n_0 = 0 < n_1 < ... <= n_J
    std::vector<int> marked_index;   // index into certificate marked_words, per checkpoint
    double delta = 0.0;
    std::vector<double> checkpoint_norm, checkpoint_inv_norm;

    SymbolicPoint representative() const {
        return SymbolicPoint(left_period, core, right_period, window_half_width);
    }
    long long horizon() const { return times.empty() ? 0 : times.back(); }
};

struct BuildOptions {
    int start_word = 0;              // index of a_0 in the certificate's marked words
    bool skip_budget_check = false;  // stress-test override
};

namespace detail {

// admissible periodic filler so that `after` can be continued forever:
// shortest cycle word c with (after)->(c...)->(c...) admissible
inline Word periodic_tail(const Sft& sft, const Word& after) {
    if (sft.allows(after.back(), after.front()) && sft.admissible(after)) return after;
    for (int len = 1; len <= sft.alphabet_size() + 1; ++len) {
        for (const Word& c : admissible_words(sft, len)) {
            if (sft.allows(after.back(), c.front()) && sft.allows(c.back(), c.front()))
                return c;
        }
    }
    throw Error(ErrorKind::InadmissibleWord, "no periodic continuation found");
}

inline Word word_slice(const Word& w, long long from, long long len) {
    return w.subword(static_cast<int>(from), static_cast<int>(len));
}

}  // namespace detail

// Greedy nested-cylinder builder.  Maintains the exact sequential product
// B_{n_j} at the canonical representative; only the factors whose windows see
// the growing tail are recomputed, extending a stable prefix product whose
// factor order equals the from-scratch evaluation.
inline OrbitPlan build_bounded_orbit(const Cocycle& a, const CocycleCoveringCertificate& cert,
                                     const EpsilonBudget& budget, const Cocycle& b,
                                     long long steps, const BuildOptions& opts = {}) {
    detail::check_shapes(a, b);
    if (b.depth() < a.depth())
        throw Error(ErrorKind::BadInput, "perturbation must refine the certified depth");
    if (!opts.skip_budget_check) {
        double dist = holder_distance(a, b, {budget.alpha, 1.0});
        if (!(dist < budget.epsilon))
            throw Error(ErrorKind::BadInput,
                        "holder_distance " + std::to_string(dist) + " >= budget " +
                            std::to_string(budget.epsilon));
    }
    const int k = a.depth();
    const int kb = b.depth();
    const int len = 2 * k + 1;
    if (opts.start_word < 0 || opts.start_word >= static_cast<int>(cert.marked_words.size()))
        throw Error(ErrorKind::BadInput, "start word out of range");
    const Region inner = region_shrink(cert.region, cert.delta);

    OrbitPlan plan;
    plan.window_half_width = k;
    plan.delta = cert.delta;
    int cur = opts.start_word;
    plan.core = cert.marked_words[static_cast<size_t>(cur)];
    plan.left_period = detail::periodic_tail(a.sft(), plan.core.prefix(1));
    {  // left period must be able to precede the core
        // scan backwards: need ...ppp core admissible
        const Word& p = plan.left_period;
        if (!a.sft().allows(p.back(), plan.core.front()))
            throw Error(ErrorKind::InadmissibleWord, "left filler does not join the core");
    }
    plan.right_period = detail::periodic_tail(a.sft(), plan.core);
    plan.times.push_back(0);
    plan.marked_index.push_back(cur);

    Matrix stable = Matrix::Identity(b.dim(), b.dim());
    long long stable_upto = 0;  // factors [0, stable_upto) folded into `stable`
    long long n_cur = 0;

    auto representative = [&](const Word& core) {
        return SymbolicPoint(plan.left_period, core, plan.right_period, k);
    };

    for (long long j = 0; j < steps; ++j) {
        // exact product at the current representative: extend the stable
        // prefix, then fold the volatile suffix
        SymbolicPoint x = representative(plan.core);
        long long new_stable = std::max<long long>(stable_upto, std::min<long long>(n_cur, n_cur + k - kb + 1));
        for (long long i = stable_upto; i < new_stable; ++i)
            stable = b.evaluate_unchecked(x, i) * stable;
        stable_upto = new_stable;
        Matrix p = stable;
        for (long long i = stable_upto; i < n_cur; ++i) p = b.evaluate_unchecked(x, i) * p;

        if (j == 0) {
            plan.checkpoint_norm.push_back(1.0);
            plan.checkpoint_inv_norm.push_back(1.0);
        }

        const std::vector<Word>& lam = cert.lambda[static_cast<size_t>(cur)];
        int picked = -1;
        for (size_t widx = 0; widx < lam.size(); ++widx) {
            Matrix q = transition_product(a, lam[widx]) * p;
            if (region_contains(inner, q)) {
                picked = static_cast<int>(widx);
                break;
            }
        }
        if (picked < 0) {
            std::ostringstream os;
            os << "no transition applies at step " << j << " (n=" << n_cur
               << "); checkpoint norm " << operator_norm(p)
               << "; budget holds: " << (opts.skip_budget_check ? "unchecked" : "yes");
            throw Error(ErrorKind::NoTransitionApplies, os.str());
        }
        const Word& w = lam[static_cast<size_t>(picked)];
        plan.transitions.push_back(w);
        plan.core = merge(plan.core, w, len);
        n_cur += w.size() - len;
        plan.times.push_back(n_cur);
        // new marked word = suffix of w
        const Word suffix = w.suffix(len);
        cur = -1;
        for (size_t mi = 0; mi < cert.marked_words.size(); ++mi)
            if (cert.marked_words[mi] == suffix) cur = static_cast<int>(mi);
        plan.marked_index.push_back(cur);
        plan.right_period = detail::periodic_tail(a.sft(), suffix);

        // checkpoint diagnostics at the updated representative
        SymbolicPoint x2 = representative(plan.core);
        Matrix p2 = stable;
        for (long long i = stable_upto; i < n_cur; ++i) p2 = b.evaluate_unchecked(x2, i) * p2;
        plan.checkpoint_norm.push_back(operator_norm(p2));
        plan.checkpoint_inv_norm.push_back(operator_norm(inverse(p2, b.tolerances())));
    }
    return plan;
}

// Independent re-verification: recompute every checkpoint product from
// scratch at the final representative and demand membership in U.
struct PlanVerification {
    bool ok = true;
    long long failed_checkpoint = -1;
    double min_margin = 0.0;  // smallest distance-to-ball-radius slack seen
};

inline PlanVerification verify_orbit_plan(const Cocycle& b, const CocycleCoveringCertificate& cert,
                                          const OrbitPlan& plan) {
    PlanVerification v;
    v.min_margin = std::numeric_limits<double>::infinity();
    SymbolicPoint x = plan.representative();
    Matrix p = Matrix::Identity(b.dim(), b.dim());
    size_t next_cp = 0;
    for (long long n = 0; n <= plan.horizon(); ++n) {
        if (next_cp < plan.times.size() && plan.times[next_cp] == n) {
            double margin = -std::numeric_limits<double>::infinity();
            for (const Ball& ball : cert.region.balls)
                margin = std::max(margin, ball.radius - operator_norm(p - ball.center));
            if (margin < 0.0) return {false, n, margin};
            v.min_margin = std::min(v.min_margin, margin);
            ++next_cp;
        }
        if (n < plan.horizon()) p = b.evaluate_unchecked(x, n) * p;
    }
    return v;
}

// Worst case over tail contexts: when the perturbation depth exceeds the
// certified window, the last few factors before each checkpoint depend on
// letters beyond the constructed core.  Enumerate those contexts exactly
// (budget permitting) and report the smallest membership margin.
inline double worst_case_checkpoint_margin(const Cocycle& b,
                                           const CocycleCoveringCertificate& cert,
                                           const OrbitPlan& plan, long long context_cap = 4096) {
    const int k = plan.window_half_width;
    const int kb = b.depth();
    const int t = std::max(0, kb - k - 1);
    double worst = std::numeric_limits<double>::infinity();
    uint64_t contexts = 1;
    for (int i = 0; i < t; ++i) contexts *= static_cast<uint64_t>(b.sft().alphabet_size());
    if (contexts > static_cast<uint64_t>(context_cap))
        throw Error(ErrorKind::EnumerationBudget, "too many tail contexts to enumerate");
    for (size_t cp = 0; cp < plan.times.size(); ++cp) {
        long long n = plan.times[cp];
        // letters beyond position n + k feed the last factors; splice every
        // admissible context into the representative
        Word base_core = plan.core;
        long long determined = n + 2 * static_cast<long long>(k) + 1;  // core letters fixed
        std::vector<Word> ctxs =
            t == 0 ? std::vector<Word>{}
                   : admissible_words(b.sft(), t, context_cap);
        auto eval_with_tail = [&](const std::optional<Word>& ctx) {
            Word core = detail::word_slice(base_core, 0, determined);
            if (ctx) {
                if (!b.sft().allows(core.back(), ctx->front())) return;
                core = concat(core, *ctx);
            }
            Word tail = detail::periodic_tail(b.sft(), core.suffix(1));
            if (!b.sft().allows(core.back(), tail.front())) return;
            SymbolicPoint x(plan.left_period, core, tail, k);
            Matrix p = Matrix::Identity(b.dim(), b.dim());
            for (long long i = 0; i < n; ++i) p = b.evaluate_unchecked(x, i) * p;
            double margin = -std::numeric_limits<double>::infinity();
            for (const Ball& ball : cert.region.balls)
                margin = std::max(margin, ball.radius - operator_norm(p - ball.center));
            worst = std::min(worst, margin);
        };
        if (t == 0) {
            eval_with_tail(std::nullopt);
        } else {
            for (const Word& c : ctxs) eval_with_tail(c);
        }
    }
    return worst;
}

// --- two-sided bound ----------------------------------------------------------

struct BoundReport {
    long long horizon = 0;
    double k_bound = 0.0;       // K = C' K_U
    double observed_max = 0.0;  // exact scan over the representative orbit
    bool two_sided = false;
    Word periodic_word{1};
    double periodic_observed = 0.0;  // exact scan over one period, both signs
    double periodic_bound = 0.0;     // K^2
};

inline BoundReport two_sided_bound(const Cocycle& b, const CocycleCoveringCertificate& cert,
                                   const OrbitPlan& plan) {
    if (plan.transitions.size() < 2)
        throw Error(ErrorKind::BadInput, "plan too short for extraction");
    BoundReport rep;
    rep.horizon = plan.horizon();
    const double k_u = region_k_bound(cert.region, b.tolerances());
    const double growth = std::max(b.sup_norm(), b.sup_inverse_norm());
    rep.k_bound = std::pow(growth, cert.max_transition_length) * k_u;

    // exact scan along the representative
    SymbolicPoint x = plan.representative();
    Matrix p = Matrix::Identity(b.dim(), b.dim());
    Matrix pinv = p;
    rep.observed_max = 1.0;
    for (long long n = 1; n <= plan.horizon(); ++n) {
        p = b.evaluate_unchecked(x, n - 1) * p;
        pinv = pinv * b.evaluate_inverse_unchecked(x, n - 1);
        rep.observed_max = std::max({rep.observed_max, operator_norm(p), operator_norm(pinv)});
    }

    // find a repeated marked word and extract the periodic stretch between
    // the two visits
    long long j1 = -1, j2 = -1;
    for (size_t i = 0; i + 1 < plan.marked_index.size() && j1 < 0; ++i)
        for (size_t j = i + 1; j < plan.marked_index.size(); ++j)
            if (plan.marked_index[i] == plan.marked_index[j] && plan.marked_index[i] >= 0) {
                j1 = static_cast<long long>(i);
                j2 = static_cast<long long>(j);
                break;
            }
    if (j1 < 0) throw Error(ErrorKind::NoRecurrence, "no marked word repeats; increase steps");
    long long t1 = plan.times[static_cast<size_t>(j1)], t2 = plan.times[static_cast<size_t>(j2)];
    const int k = plan.window_half_width;
    rep.periodic_word = detail::word_slice(plan.core, t1 + k, t2 - t1);
    SymbolicPoint y = periodic_point(b.sft(), rep.periodic_word);
    rep.periodic_bound = rep.k_bound * rep.k_bound;
    rep.periodic_observed = 1.0;
    long long period = t2 - t1;
    Matrix q = Matrix::Identity(b.dim(), b.dim());
    Matrix qinv = q;
    for (long long n = 1; n <= period; ++n) {
        q = b.evaluate_unchecked(y, n - 1) * q;
        qinv = qinv * b.evaluate_inverse_unchecked(y, n - 1);
        rep.periodic_observed =
            std::max({rep.periodic_observed, operator_norm(q), operator_norm(qinv)});
    }
    Matrix qb = Matrix::Identity(b.dim(), b.dim());
    Matrix qbinv = qb;
    for (long long n = 1; n <= period; ++n) {
        qb = b.evaluate_inverse_unchecked(y, -n) * qb;
        qbinv = qbinv * b.evaluate_unchecked(y, -n);
        rep.periodic_observed =
            std::max({rep.periodic_observed, operator_norm(qb), operator_norm(qbinv)});
    }
    rep.two_sided = rep.periodic_observed <= rep.periodic_bound;
    return rep;
}

// --- brute-force oracle ---------------------------------------------------------

struct OracleResult {
    Word word{1};
    double value = 0.0;
    long long leaves = 0;
};

// Minimize max_{n<=N} max(||B_n||, ||B_n^{-1}||) over admissible words of
// length N, evaluated at the canonical completion (left tail: first window
// repeated; right tail: final window repeated).  Exact branch-and-bound: the
// partial value only grows along extensions, so pruning against the best
// complete value loses nothing.
inline OracleResult brute_force_min_max_norm(const Cocycle& b, int horizon,
                                             double prune_bound = 0.0,
                                             long long node_cap = 200'000'000) {
    const int kb = b.depth();
    const int win = 2 * kb + 1;
    if (horizon < win)
        throw Error(ErrorKind::BadInput, "horizon shorter than the cocycle window");
    OracleResult best;
    best.value = prune_bound > 0.0 ? prune_bound : std::numeric_limits<double>::infinity();
    std::vector<Symbol> cur;
    long long nodes = 0;

    auto evaluate_prefix = [&](const std::vector<Symbol>& w, bool full) -> double {
        // products computable once the needed letters exist
        Word core{std::vector<Symbol>(w)};
        Word left = core.prefix(win);
        if (full && !b.sft().allows(core.back(), core.suffix(win).front()))
            return std::numeric_limits<double>::infinity();  // no canonical completion
        SymbolicPoint x(left, core, full ? core.suffix(win) : core.suffix(1), 0);
        long long nmax = full ? horizon : static_cast<long long>(w.size()) - kb;
        if (nmax <= 0) return 0.0;
        Matrix p = Matrix::Identity(b.dim(), b.dim());
        Matrix pinv = p;
        double val = 1.0;
        for (long long n = 1; n <= nmax; ++n) {
            p = b.evaluate_unchecked(x, n - 1) * p;
            pinv = pinv * b.evaluate_inverse_unchecked(x, n - 1);
            val = std::max({val, operator_norm(p), operator_norm(pinv)});
        }
        return val;
    };

    auto rec = [&](auto&& self) -> void {
        if (++nodes > node_cap) throw Error(ErrorKind::EnumerationBudget, "oracle node cap hit");
        if (static_cast<int>(cur.size()) == horizon) {
            ++best.leaves;
            double v = evaluate_prefix(cur, true);
            if (v < best.value) {
                best.value = v;
                best.word = Word(std::vector<Symbol>(cur));
            }
            return;
        }
        for (Symbol c = 1; c <= b.sft().alphabet_size(); ++c) {
            if (!cur.empty() && !b.sft().allows(cur.back(), c)) continue;
            cur.push_back(c);
            bool viable = true;
            if (static_cast<int>(cur.size()) == win) {
                // the left tail repeats the first window, which must self-join
                Word first{std::vector<Symbol>(cur)};
                viable = b.sft().allows(first.back(), first.front());
            }
            if (viable && static_cast<int>(cur.size()) >= win &&
                evaluate_prefix(cur, false) >= best.value)
                viable = false;
            if (viable) self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    if (!std::isfinite(best.value))
        throw Error(ErrorKind::SearchExhausted, "no admissible completion under the prune bound");
    return best;
}

// --- unboundedness attack --------------------------------------------------------

struct AttackReport {
    double measured = 0.0;            // ||Bhat_n(x0)||
    double bound = 0.0;               // r^n / ||B_n(x0)^{-1}||
    double kappa0 = 0.0;              // max_{i<=n} ||B_i(x0)^{+-1}||
    double kappa_bound = 0.0;         // r^n kappa0^{-(d-1)}
    double perturbation = 0.0;        // exact C0 distance
    double perturbation_bound = 0.0;  // ||D_r - Id|| * sup ||B||
    int depth_used = 0;
};

struct AttackResult {
    Cocycle perturbed;
    AttackReport report;
};

namespace detail {

inline Matrix rotation_to(const Vector& v) {
    const int d = static_cast<int>(v.size());
    Vector u = v / v.norm();
    Matrix r = Matrix::Identity(d, d);
    Vector e1 = Vector::Zero(d);
    e1(0) = 1.0;
    double c = u.dot(e1);
    Vector w = u - c * e1;
    double s = w.norm();
    if (s < 1e-14) {
        if (c > 0) return r;
        // u = -e1: rotate by pi in the (e1, e2) plane
        r(0, 0) = -1.0;
        r(1, 1) = -1.0;
        return r;
    }
    w /= s;
    r += (c - 1.0) * (e1 * e1.transpose() + w * w.transpose());
    r += s * (w * e1.transpose() - e1 * w.transpose());
    return r;
}

}  // namespace detail

// Along the first n points of the orbit of x0, multiply B by a rotated
// stretch D_r aligned with the vectors v_i = B_i(x0) B_n(x0)^{-1} v0; the
// telescoped product then expands v0 by r^n.
inline AttackResult unbounded_attack(const Cocycle& b, const SymbolicPoint& x0, double r,
                                     long long n, const Vector& v0, int max_extra_depth = 40) {
    const int d = b.dim();
    if (d < 2) throw Error(ErrorKind::DimensionTooSmall, "need d >= 2");
    if (r <= 1.0) throw Error(ErrorKind::BadInput, "need r > 1");
    if (v0.size() != d) throw Error(ErrorKind::ShapeMismatch, "v0 dimension mismatch");
    if (!is_admissible(b.sft(), x0)) throw Error(ErrorKind::InadmissiblePoint, "x0 not in SFT");

    // separating depth: the n orbit windows must be pairwise distinct
    int depth = b.depth();
    for (;; ++depth) {
        if (depth > b.depth() + max_extra_depth)
            throw Error(ErrorKind::SeparationFailed, "orbit points do not separate");
        bool distinct = true;
        std::vector<Word> wins;
        for (long long i = 0; i < n && distinct; ++i) {
            Word w = x0.window(i - depth, i + depth);
            for (const Word& o : wins)
                if (o == w) distinct = false;
            wins.push_back(w);
        }
        if (distinct) break;
    }

    Matrix bn = product(b, x0, n);
    Matrix bn_inv = inverse(bn, b.tolerances());
    Matrix dr = Matrix::Identity(d, d);
    dr(0, 0) = r;
    for (int i = 1; i < d; ++i) dr(i, i) = std::pow(r, -1.0 / (d - 1));

    std::vector<CocycleEntry> pins;
    double kappa0 = 1.0;
    Matrix bi = Matrix::Identity(d, d);
    for (long long i = 0; i < n; ++i) {
        kappa0 = std::max({kappa0, operator_norm(bi), operator_norm(inverse(bi, b.tolerances()))});
        Matrix bnext = b.evaluate_unchecked(x0, i) * bi;
        Vector v_next = bnext * (bn_inv * v0);  // v_{i+1}
        Matrix rot = detail::rotation_to(v_next);
        Word window = x0.window(i - depth, i + depth);
        pins.push_back({window, rot * dr * rot.transpose() * b.value(window.subword(
                                    depth - b.depth(), 2 * b.depth() + 1))});
        bi = bnext;
    }
    kappa0 = std::max({kappa0, operator_norm(bn), operator_norm(bn_inv)});

    Cocycle bhat = b.with_overrides(depth, pins);
    AttackResult out{bhat, {}};
    out.report.depth_used = depth;
    out.report.measured = operator_norm(product(bhat, x0, n));
    out.report.bound = std::pow(r, static_cast<double>(n)) / operator_norm(bn_inv);
    out.report.kappa0 = kappa0;
    out.report.kappa_bound =
        std::pow(r, static_cast<double>(n)) * std::pow(kappa0, -static_cast<double>(d - 1));
    out.report.perturbation = c0_distance(b, bhat);
    out.report.perturbation_bound =
        operator_norm(dr - Matrix::Identity(d, d)) * b.sup_norm();
    return out;
}

// Empirical stability sweep: success/failure of the builder as the
// perturbation amplitude grows past the proven budget.
struct SweepRow {
    double amplitude = 0.0;
    double distance = 0.0;
    bool built = false;
};

inline std::vector<SweepRow> empirical_budget_sweep(const Cocycle& a,
                                                    const CocycleCoveringCertificate& cert,
                                                    const EpsilonBudget& budget, long long steps,
                                                    const std::vector<double>& multipliers,
                                                    uint64_t seed, int noise_depth) {
    std::vector<SweepRow> rows;
    for (double mult : multipliers) {
        Rng rng(seed);
        SweepRow row;
        row.amplitude = mult * budget.epsilon;
        Cocycle b = sample_holder_perturbation(a, noise_depth, row.amplitude, 4, rng);
        row.distance = holder_distance(a, b, {budget.alpha, 1.0});
        try {
            BuildOptions opts;
            opts.skip_budget_check = true;
            OrbitPlan plan = build_bounded_orbit(a, cert, budget, b, steps, opts);
            row.built = verify_orbit_plan(b, cert, plan).ok;
        } catch (const Error&) {
            row.built = false;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qcorbit
