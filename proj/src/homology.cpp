#include "charmod/homology.hpp"

#include <algorithm>
#include <cassert>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

// Orientation sign of facet tau inside sigma: express [outward normal,
// basis of tau] in the basis of sigma and take the sign of the determinant.
int incidence_sign(const Cell& sigma, const Cell& tau, const ZVec& outward) {
    int d = sigma.dim();
    QMat basis; // rows: sigma's lattice basis, transposed solve below
    for (const auto& r : sigma.direction_lattice()) basis.push_back(z_to_q(r));
    // solve basis^T y = target for each target column
    QMat bt((size_t)sigma.ambient(), QVec(d, Rat(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < sigma.ambient(); ++j) bt[j][i] = basis[i][j];
    auto coords = [&](const ZVec& target) {
        auto y = solve(bt, z_to_q(target));
        assert(y.has_value());
        return *y;
    };
    QMat m;
    m.push_back(coords(outward));
    for (const auto& r : tau.direction_lattice()) m.push_back(coords(r));
    // m rows are the coordinate vectors; det of the d x d matrix
    Rat dt = det(m);
    assert(!dt.is_zero());
    return dt.sign();
}

} // namespace

ChainComplex bm_chain_complex(const CellComplex& k) {
    std::vector<int> all(k.size());
    for (size_t i = 0; i < k.size(); ++i) all[i] = (int)i;
    return bm_chain_complex(k, all);
}

ChainComplex bm_chain_complex(const CellComplex& k, const std::vector<int>& subset) {
    ChainComplex c;
    std::map<int, int> pos; // cell index -> position within its degree
    for (int i : subset) {
        int d = k.cell(i).dim();
        pos[i] = (int)c.generators[d].size();
        c.generators[d].push_back(i);
    }
    std::vector<bool> in_subset(k.size(), false);
    for (int i : subset) in_subset[i] = true;

    for (auto& [deg, gens] : c.generators) {
        if (deg == 0 || !c.generators.count(deg - 1)) {
            if (deg > 0 && !gens.empty())
                c.boundary[deg] = QMat(0, QVec(gens.size(), Rat(0)));
            continue;
        }
        const auto& below = c.generators[deg - 1];
        QMat b(below.size(), QVec(gens.size(), Rat(0)));
        for (size_t col = 0; col < gens.size(); ++col) {
            int si = gens[col];
            for (const auto& f : k.facets_of(si)) {
                if (!in_subset[(size_t)f.facet_index]) continue;
                int sign = incidence_sign(k.cell(si), k.cell(f.facet_index), f.normal);
                b[pos[f.facet_index]][col] = Rat(sign);
            }
        }
        c.boundary[deg] = std::move(b);
    }

    // d o d = 0, exactly
    for (const auto& [deg, b] : c.boundary) {
        auto it = c.boundary.find(deg - 1);
        if (it == c.boundary.end() || it->second.empty() || b.empty()) continue;
        const QMat& b2 = it->second;
        for (size_t i = 0; i < b2.size(); ++i) {
            for (size_t j = 0; j < b[0].size(); ++j) {
                Rat acc;
                for (size_t l = 0; l < b.size(); ++l) acc += b2[i][l] * b[l][j];
                assert(acc.is_zero());
                (void)acc;
            }
        }
    }
    return c;
}

BettiTable betti(const ChainComplex& c) {
    BettiTable t;
    for (const auto& [deg, gens] : c.generators) {
        int a = (int)gens.size();
        int r_in = 0, r_out = 0;
        auto bi = c.boundary.find(deg);
        if (bi != c.boundary.end() && !bi->second.empty()) r_out = rank(bi->second);
        auto bo = c.boundary.find(deg + 1);
        if (bo != c.boundary.end() && !bo->second.empty()) r_in = rank(bo->second);
        t.betti[deg] = a - r_out - r_in;
    }
    return t;
}

BettiTable bm_betti(const CellComplex& k) { return betti(bm_chain_complex(k)); }

std::vector<int> stratum_subcomplex(const CellComplex& k, int s, int j) {
    if (s <= 0 || s > k.ambient()) throw BadProjection("projection dimension out of range");
    std::vector<int> out;
    for (size_t i = 0; i < k.size(); ++i)
        if (image_dimension(k.cell((int)i), s) == j) out.push_back((int)i);
    return out;
}

std::map<std::pair<int, int>, int> direct_image_summand_counts(const CellComplex& k, int s) {
    std::map<std::pair<int, int>, int> out;
    int m = k.ambient();
    for (int j = 0; j <= s; ++j) {
        auto cells = stratum_subcomplex(k, s, j);
        BettiTable t;
        if (!cells.empty()) t = betti(bm_chain_complex(k, cells));
        for (int deg = 0; deg <= m; ++deg) {
            int count = 0;
            auto it = t.betti.find(deg);
            if (it != t.betti.end()) count = it->second;
            out[{j, deg - j}] = count;
        }
    }
    return out;
}

} // namespace charmod
