#pragma once

// Tractability verdicts for finite signature sets: planar #CSP (three
// categories), general #CSP (two), and planar #CSP with even-multiplicity
// variables for symmetric sets (five tractable classes).

#include "holant/brute_force.hpp"
#include "holant/classes.hpp"

#include <thread>

namespace holant {

enum class Category { PTime, PlanarPTimeOnly, SharpPHard };

inline const char* to_string(Category c) {
    switch (c) {
        case Category::PTime: return "PTime";
        case Category::PlanarPTimeOnly: return "PlanarPTimeOnly";
        case Category::SharpPHard: return "SharpPHard";
    }
    return "?";
}

enum class TractableClass { Affine, Product, MatchgateHat, AffineDagger, MatchgateHatDagger };

inline const char* to_string(TractableClass c) {
    switch (c) {
        case TractableClass::Affine: return "A";
        case TractableClass::Product: return "P";
        case TractableClass::MatchgateHat: return "M_hat";
        case TractableClass::AffineDagger: return "A_dagger";
        case TractableClass::MatchgateHatDagger: return "M_hat_dagger";
    }
    return "?";
}

// One member of F outside a class, with the evidence.
struct Witness {
    TractableClass cls;
    int index = 0;  // position in F
    std::string evidence;
};

struct DichotomyVerdict {
    Category category = Category::SharpPHard;
    std::vector<TractableClass> holding;  // every containment F subset of C that holds
    std::vector<Witness> witnesses;       // first failing member of each other class

    bool holds(TractableClass c) const { return std::find(holding.begin(), holding.end(), c) != holding.end(); }
};

namespace detail {

inline std::string mgi_evidence(const MatchgateCheck& m, int n, const char* what) {
    if (m.parity_failed) return std::string(what) + " fails the parity condition";
    std::string s = std::string(what) + " violates the matchgate identity at alpha=" + bit_string(m.alpha, n) + ", positions {";
    for (std::size_t k = 0; k < m.positions.size(); ++k) s += (k ? "," : "") + std::to_string(m.positions[k]);
    return s + "}";
}

// Membership of f in c; on failure `evidence` says why.
inline bool member(const Signature& f, TractableClass c, std::string& evidence) {
    switch (c) {
        case TractableClass::Affine: {
            auto a = affine_check(f);
            if (!a.member) evidence = a.reason;
            return a.member;
        }
        case TractableClass::Product: {
            if (is_product(f)) return true;
            evidence = affine_support(f) ? "not a tensor product of unary, binary equality and disequality factors"
                                         : "support is not an affine subspace";
            return false;
        }
        case TractableClass::MatchgateHat: {
            auto m = matchgate_check(hadamard(f));
            if (!m.member) evidence = mgi_evidence(m, f.arity(), "H2 f");
            return m.member;
        }
        case TractableClass::AffineDagger:
            if (is_affine_dagger(f)) return true;
            evidence = "diag(1, w^-1) f is not affine for w = zeta8, zeta8^3";
            return false;
        case TractableClass::MatchgateHatDagger:
            if (is_matchgate_hat_dagger(f)) return true;
            evidence = "H2 diag(1, w^-1) f is not a matchgate signature for w = i, -i";
            return false;
    }
    return false;
}

// Decides F subset of each class; members are tested on worker threads.
inline DichotomyVerdict containments(const std::vector<Signature>& F, const std::vector<TractableClass>& classes) {
    std::size_t nf = F.size(), nc = classes.size();
    std::vector<std::vector<char>> in(nf, std::vector<char>(nc, 0));
    std::vector<std::vector<std::string>> why(nf, std::vector<std::string>(nc));
    auto work = [&](std::size_t from, std::size_t step) {
        for (std::size_t i = from; i < nf; i += step)
            for (std::size_t c = 0; c < nc; ++c) in[i][c] = member(F[i], classes[c], why[i][c]);
    };
    std::size_t workers = std::min<std::size_t>(nf, static_cast<std::size_t>(default_workers()));
    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    DichotomyVerdict v;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t i = 0;
        while (i < nf && in[i][c]) ++i;
        if (i == nf)
            v.holding.push_back(classes[c]);
        else
            v.witnesses.push_back({classes[c], static_cast<int>(i), why[i][c]});
    }
    return v;
}

} // namespace detail

// PTime iff F lies in A or in P; PlanarPTimeOnly iff otherwise F lies in M_hat.
inline DichotomyVerdict classify_pl_csp(const std::vector<Signature>& F) {
    auto v = detail::containments(F, {TractableClass::Affine, TractableClass::Product, TractableClass::MatchgateHat});
    if (v.holds(TractableClass::Affine) || v.holds(TractableClass::Product))
        v.category = Category::PTime;
    else if (v.holds(TractableClass::MatchgateHat))
        v.category = Category::PlanarPTimeOnly;
    else
        v.category = Category::SharpPHard;
    return v;
}

// Without planarity only A and P are tractable.
inline DichotomyVerdict classify_csp(const std::vector<Signature>& F) {
    auto v = detail::containments(F, {TractableClass::Affine, TractableClass::Product});
    v.category = v.holding.empty() ? Category::SharpPHard : Category::PTime;
    return v;
}

// Symmetric signatures, every variable of even multiplicity.
inline DichotomyVerdict classify_pl_csp2_symmetric(const std::vector<Signature>& F) {
    for (std::size_t i = 0; i < F.size(); ++i)
        if (!F[i].is_symmetric()) throw DomainError("classify_pl_csp2_symmetric: signature " + std::to_string(i) + " is not symmetric");
    auto v = detail::containments(F, {TractableClass::Product, TractableClass::Affine, TractableClass::AffineDagger,
                                      TractableClass::MatchgateHat, TractableClass::MatchgateHatDagger});
    v.category = v.holding.empty() ? Category::SharpPHard : Category::PTime;
    return v;
}

} // namespace holant
