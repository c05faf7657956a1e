// One line per acceptance criterion; exit status 0 iff all pass.
#include "klein/klein.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

using namespace klein;

namespace {

struct Line {
    int number;
    std::string title;
    std::vector<std::string> claims;
};

bool field_axioms_sample() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> n(-50, 50), d(1, 9);
    auto q = [&] { return GaussianRational(mpq_class(n(rng), d(rng)), mpq_class(n(rng), d(rng))); };
    for (int i = 0; i < 500; ++i) {
        auto a = q(), b = q(), c = q();
        if (!(a * (b + c) == a * b + a * c) || !((a * b) * c == a * (b * c)) || !(a + b == b + a)) return false;
        if (!a.is_zero() && !(a * a.inverse() == GaussianRational(1))) return false;
    }
    auto x = parse_poly("x + (1+i)*y - z*w", ctx::xyzw()), y = parse_poly("x*y - 3*w^2", ctx::xyzw());
    return x * y == y * x && divide_exact(x * y, y) == x;
}

bool semicontinuity(const KleinConfiguration& k) {
    auto M = fatpoint_conditions_symbolic(ideal_generators(), 4);
    std::size_t generic = rank(M);
    PointSampler sp(31, &k);
    for (int s = 0; s < 3; ++s)
        if (rank(specialize(M, sp.next().coords())) > generic) return false;
    return generic == 15;
}

bool group_stability() {
    auto g = generate_group(g80_generators(), GroupMode::projective);
    return group_stable(ideal_generators(), g.generators);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    VerifyOptions opt{{}, 1, false};
    VerificationReport rep = run_verification(opt);
    KleinConfiguration k = build_klein();

    std::vector<Line> lines{
        {1, "incidence statistics of the 60 planes", {"incidence.arrangement"}},
        {2, "configuration counts", {"incidence.counts"}},
        {3, "group facts", {"group.heisenberg_order", "group.anticommute", "group.center_commutator", "group.quadric_orbits"}},
        {4, "ideal of the 60 points and of the diminished set",
         {"ideal.sextics_through_z60", "ideal.quintics_through_w", "ideal.sextics_through_w"}},
        {5, "unexpected cone of degree 6", {"cone.identities", "cone.unexpected"}},
        {6, "(4,2,2) sextic", {"mult422.symbolic_rank", "mult422.samples"}},
        {7, "geproci of the 60 points",
         {"geproci.covers", "geproci.projected_lines", "geproci.sextic_contains_images",
          "geproci.complete_intersection", "geproci.star_nodes"}},
        {8, "removal chains k=0..7",
         {"chains.k0", "chains.k1", "chains.k2", "chains.k3", "chains.k4", "chains.k5", "chains.k6", "chains.k7"}},
        {9, "Z24: configuration, C(4), (4,6) complete intersection, residual grid",
         {"z24.configuration", "z24.c4_cone", "z24.complete_intersection", "z24.residual_grid"}},
        {10, "collinearities of the planar 12-point set", {"real.collinearities"}},
    };

    bool all = true;
    for (const auto& l : lines) {
        bool ok = true;
        std::string failed;
        for (const auto& id : l.claims) {
            const ClaimRecord* c = rep.find(id);
            if (!c || !c->pass) {
                ok = false;
                failed += " " + id;
            }
        }
        all = all && ok;
        std::printf("criterion %2d %s  %s%s\n", l.number, ok ? "PASS" : "FAIL", l.title.c_str(),
                    failed.empty() ? "" : ("  [failed:" + failed + "]").c_str());
    }

    // 11: property suites, including a byte-identical re-run of the full report
    bool fa = field_axioms_sample();
    bool sc = semicontinuity(k);
    bool gs = group_stability();
    bool det = run_verification(opt).jsonl() == rep.jsonl();
    bool ok11 = fa && sc && gs && det;
    all = all && ok11;
    std::printf("criterion 11 %s  property suites (field axioms %d, semicontinuity %d, group stability %d, determinism %d)\n",
                ok11 ? "PASS" : "FAIL", fa, sc, gs, det);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("overall %s  (%zu claims, %.1f s)\n", all ? "PASS" : "FAIL", rep.claims.size(), secs);
    return all ? 0 : 1;
}
