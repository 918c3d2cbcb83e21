#pragma once

#include <map>
#include <string>
#include <thread>
#include <vector>

#include "projjet/reduce.hpp"

namespace projjet {

/// Parametrized surface patch (u, v) -> R^4 with polynomial components and a
/// rectangular parameter domain. Components are stored as jets of the patch's
/// polynomial degree.
template <class K>
struct SurfacePatch {
    std::array<Jet2<K>, 4> components;
    K u_min{0}, u_max{0}, v_min{0}, v_max{0};

    int degree() const { return components[0].order(); }

    /// Graph surface (u, v, f1(u,v), f2(u,v)).
    static SurfacePatch graph(const Jet2<K>& f1, const Jet2<K>& f2, K u0, K u1, K v0, K v1) {
        f1.check_order(f2);
        Jet2<K> cu(f1.order()), cv(f1.order());
        cu.set(1, 0, K(1));
        cv.set(0, 1, K(1));
        return SurfacePatch{{cu, cv, f1, f2}, std::move(u0), std::move(u1), std::move(v0),
                            std::move(v1)};
    }

    template <class K2, class F>
    SurfacePatch<K2> map(F&& f) const {
        return SurfacePatch<K2>{{components[0].template map<K2>(f),
                                 components[1].template map<K2>(f),
                                 components[2].template map<K2>(f),
                                 components[3].template map<K2>(f)},
                                f(u_min), f(u_max), f(v_min), f(v_max)};
    }
};

namespace detail {

template <class K>
K absval(const K& x) {
    if constexpr (std::is_same_v<K, double>) return std::fabs(x);
    else return x.abs();
}

/// Exact 4x4 inverse by Gaussian elimination.
template <class K>
std::array<std::array<K, 4>, 4> invert4(std::array<std::array<K, 4>, 4> m) {
    std::array<std::array<K, 4>, 4> inv{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) inv[i][j] = K(0);
        inv[i][i] = K(1);
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        while (piv < 4 && k_is_zero(m[piv][col])) ++piv;
        if (piv == 4) throw SingularLinearPart("invert4: singular frame");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || k_is_zero(m[r][col])) continue;
            K f = m[r][col] / m[col][col];
            for (int c = 0; c < 4; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    for (int r = 0; r < 4; ++r) {
        K d = m[r][r];
        for (int c = 0; c < 4; ++c) inv[r][c] = inv[r][c] / d;
    }
    return inv;
}

} // namespace detail

/// Monge form at a point together with the data needed to replay the
/// construction: the recentered frame coordinates (nc) with nc[0], nc[1] the
/// new planar pair and nc[2], nc[3] the heights.
template <class K>
struct MongeAtPoint {
    MongeJet<K> monge;
    std::array<Jet2<K>, 4> frame_coords;
};

/// Monge form of the patch at an interior parameter point: translate the
/// point to the origin, send the tangent plane to the xy-plane by completing
/// the two tangent vectors with the pair of standard basis vectors of maximal
/// complementary determinant (no square roots involved), and re-graph over
/// the new (x, y).
template <class K>
MongeJet<K> monge_form_at(const SurfacePatch<K>& surf, const K& u0, const K& v0, int order) {
    std::array<Jet2<K>, 4> sh{surf.components[0].recentered(u0, v0),
                              surf.components[1].recentered(u0, v0),
                              surf.components[2].recentered(u0, v0),
                              surf.components[3].recentered(u0, v0)};
    int work = std::max(order, surf.degree());
    for (auto& c : sh) {
        c = c.with_order(work);
        c.set(0, 0, K(0));
    }
    // Jacobian rows: (d/du, d/dv) of each component
    std::array<std::array<K, 2>, 4> J;
    for (int i = 0; i < 4; ++i) J[i] = {sh[i].at(1, 0), sh[i].at(0, 1)};

    // largest 2x2 minor decides which coordinate pair becomes (x, y)
    int best_r1 = -1, best_r2 = -1;
    K best(0);
    for (int r1 = 0; r1 < 4; ++r1)
        for (int r2 = r1 + 1; r2 < 4; ++r2) {
            K m = detail::absval(J[r1][0] * J[r2][1] - J[r1][1] * J[r2][0]);
            if (best_r1 < 0 || best < m) {
                best = m;
                best_r1 = r1;
                best_r2 = r2;
            }
        }
    if (k_is_zero(J[best_r1][0] * J[best_r2][1] - J[best_r1][1] * J[best_r2][0]))
        throw SingularLinearPart("monge_form_at: rank-deficient differential");

    // frame matrix: tangent columns completed by the complementary basis pair
    std::array<std::array<K, 4>, 4> M{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M[i][j] = K(0);
    for (int i = 0; i < 4; ++i) {
        M[i][0] = J[i][0];
        M[i][1] = J[i][1];
    }
    int col = 2;
    for (int i = 0; i < 4; ++i) {
        if (i == best_r1 || i == best_r2) continue;
        M[i][col] = K(1);
        ++col;
    }
    auto Minv = detail::invert4(M);

    std::array<Jet2<K>, 4> nc{Jet2<K>(work), Jet2<K>(work), Jet2<K>(work), Jet2<K>(work)};
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l)
            if (!k_is_zero(Minv[i][l])) nc[i] = nc[i] + Minv[i][l] * sh[l];

    JetMapN<K> planar(nc[0], nc[1]);
    JetMapN<K> t = invert_planar(planar);
    MongeJet<K> out(compose(nc[2], t), compose(nc[3], t));
    return out.truncated(order);
}

template <class K>
MongeAtPoint<K> monge_form_at_detailed(const SurfacePatch<K>& surf, const K& u0, const K& v0,
                                       int order) {
    // same construction, keeping the frame coordinates for fidelity checks
    SurfacePatch<K> shifted = surf;
    for (auto& c : shifted.components) {
        c = c.recentered(u0, v0);
        c.set(0, 0, K(0));
    }
    int work = std::max(order, surf.degree());
    MongeAtPoint<K> out{monge_form_at(surf, u0, v0, order),
                        {Jet2<K>(work), Jet2<K>(work), Jet2<K>(work), Jet2<K>(work)}};
    std::array<Jet2<K>, 4> sh{shifted.components[0].with_order(work),
                              shifted.components[1].with_order(work),
                              shifted.components[2].with_order(work),
                              shifted.components[3].with_order(work)};
    std::array<std::array<K, 2>, 4> J;
    for (int i = 0; i < 4; ++i) J[i] = {sh[i].at(1, 0), sh[i].at(0, 1)};
    int best_r1 = -1, best_r2 = -1;
    K best(0);
    for (int r1 = 0; r1 < 4; ++r1)
        for (int r2 = r1 + 1; r2 < 4; ++r2) {
            K m = detail::absval(J[r1][0] * J[r2][1] - J[r1][1] * J[r2][0]);
            if (best_r1 < 0 || best < m) {
                best = m;
                best_r1 = r1;
                best_r2 = r2;
            }
        }
    std::array<std::array<K, 4>, 4> M{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M[i][j] = K(0);
    for (int i = 0; i < 4; ++i) {
        M[i][0] = J[i][0];
        M[i][1] = J[i][1];
    }
    int col = 2;
    for (int i = 0; i < 4; ++i) {
        if (i == best_r1 || i == best_r2) continue;
        M[i][col] = K(1);
        ++col;
    }
    auto Minv = detail::invert4(M);
    for (int i = 0; i < 4; ++i) {
        out.frame_coords[i] = Jet2<K>(work);
        for (int l = 0; l < 4; ++l)
            if (!k_is_zero(Minv[i][l]))
                out.frame_coords[i] = out.frame_coords[i] + Minv[i][l] * sh[l];
    }
    return out;
}

/// Scan grid: nodes x resolution in u times v (inclusive endpoints).
struct GridSpec {
    int nu = 10, nv = 10;
};

struct ScanRecord {
    int iu = 0, iv = 0;
    double u = 0, v = 0;
    std::string u_exact, v_exact;
    TwoJetClass two_jet = TwoJetClass::DegenerateInflectionZero;
    StratumLabel stratum = StratumLabel::HigherCodim;
    int codim = -1;
    int delta_disc_sign = 0;
    /// Stratum condition values read in the normalized 2-jet coordinates
    /// (a03/b30 for hyperbolic nodes, a03/a12/b03 for parabolic ones, ...),
    /// whose sign changes along grid lines bracket the stratum boundaries.
    std::map<std::string, double> predicates;
    std::map<std::string, std::string> predicates_exact;
    std::map<std::string, double> moduli;
    std::string flags; // "near-degenerate", "error:<what>"
    bool ok = true;
};

struct ScanSummary {
    std::vector<ScanRecord> records;
    std::map<std::string, int> histogram;
    int failures = 0;
    /// Share of classified nodes on codimension-0 strata. On a generic patch
    /// this tends to 1 under grid refinement; reported, never asserted.
    double codim0_fraction = 0.0;
};

/// Classifies every grid node; node jobs are independent and run on a small
/// thread pool, with records finally ordered by (iu, iv).
template <class K>
ScanSummary scan(const SurfacePatch<K>& surf, const GridSpec& grid, int order,
                 bool with_moduli = false, int threads = 2) {
    if (grid.nu < 2 || grid.nv < 2) throw InputError("scan: grid needs at least 2x2 nodes");
    ScanSummary out;
    out.records.resize(static_cast<std::size_t>(grid.nu) * grid.nv);

    auto node_value = [&](int idx, int n, const K& lo, const K& hi) {
        return lo + (hi - lo) * K(idx) / K(n - 1);
    };

    auto work = [&](int row_begin, int row_end) {
        for (int iu = row_begin; iu < row_end; ++iu) {
            K u = node_value(iu, grid.nu, surf.u_min, surf.u_max);
            for (int iv = 0; iv < grid.nv; ++iv) {
                K v = node_value(iv, grid.nv, surf.v_min, surf.v_max);
                ScanRecord rec;
                rec.iu = iu;
                rec.iv = iv;
                rec.u = scalar_traits<K>::to_double(u);
                rec.v = scalar_traits<K>::to_double(v);
                rec.u_exact = scalar_traits<K>::to_string(u);
                rec.v_exact = scalar_traits<K>::to_string(v);
                try {
                    MongeJet<K> f = monge_form_at(surf, u, v, order);
                    double margin;
                    {
                        FloatZeroGuard guard(FloatZeroPolicy::current().tol, f.f1().max_abs() +
                                                                                 f.f2().max_abs());
                        rec.two_jet = classify_2jet(f);
                        rec.delta_disc_sign = k_sgn(delta_discriminant(delta_form(f)));
                        auto cls = classify_stratum(f);
                        rec.stratum = cls.label;
                        rec.codim = codimension(cls.label);
                        auto put = [&rec, &cls](const char* name, int slot, int i, int j) {
                            const auto& c = cls.normalized.slot(slot).at(i, j);
                            rec.predicates[name] =
                                scalar_traits<std::decay_t<decltype(c)>>::to_double(c);
                            rec.predicates_exact[name] =
                                scalar_traits<std::decay_t<decltype(c)>>::to_string(c);
                        };
                        switch (cls.two_jet) {
                            case TwoJetClass::Hyperbolic:
                                put("a03", 0, 0, 3);
                                put("b30", 1, 3, 0);
                                break;
                            case TwoJetClass::Parabolic:
                                put("a03", 0, 0, 3);
                                put("a12", 0, 1, 2);
                                put("b03", 1, 0, 3);
                                break;
                            case TwoJetClass::InflectionMinus:
                                put("b30", 1, 3, 0);
                                put("b03", 1, 0, 3);
                                break;
                            case TwoJetClass::InflectionPlus:
                                put("b30", 1, 3, 0);
                                put("b12", 1, 1, 2);
                                break;
                            default: break;
                        }
                        margin = guard.min_margin();
                        if (with_moduli && cls.label != StratumLabel::HigherCodim &&
                            order >= 4) {
                            // moduli are scanned in float precision
                            auto fd = f.template map<double>([](const K& c) {
                                return scalar_traits<K>::to_double(c);
                            });
                            try {
                                auto rep = reduce_normal_form(fd);
                                for (const auto& [k2, m] : rep.moduli) rec.moduli[k2] = m.approx;
                            } catch (const Error&) {
                                rec.flags = "moduli-unavailable";
                            }
                        }
                    }
                    if (!scalar_traits<K>::exact && margin <= 10.0)
                        rec.flags = rec.flags.empty() ? "near-degenerate"
                                                      : rec.flags + ";near-degenerate";
                } catch (const Error& e) {
                    rec.ok = false;
                    rec.flags = std::string("error:") + e.what();
                }
                out.records[static_cast<std::size_t>(iu) * grid.nv + iv] = std::move(rec);
            }
        }
    };

    threads = std::max(1, std::min(threads, grid.nu));
    if (threads == 1) {
        work(0, grid.nu);
    } else {
        std::vector<std::thread> pool;
        int chunk = (grid.nu + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(grid.nu, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    for (const auto& rec : out.records) {
        if (!rec.ok) {
            ++out.failures;
            continue;
        }
        ++out.histogram[to_string(rec.stratum)];
        if (rec.codim == 0) out.codim0_fraction += 1.0;
    }
    std::size_t classified = out.records.size() - static_cast<std::size_t>(out.failures);
    if (classified > 0) out.codim0_fraction /= static_cast<double>(classified);
    return out;
}

/// CSV emission, one line per node in scan order.
inline std::string scan_to_csv(const ScanSummary& s) {
    std::string csv =
        "u,v,two_jet_class,stratum,codim,delta_disc_sign,alpha,beta,gamma,lambda,Lambda,k1,k2,"
        "flags\n";
    auto field = [](const std::map<std::string, double>& m, const char* k) {
        auto it = m.find(k);
        if (it == m.end()) return std::string();
        return scalar_traits<double>::to_string(it->second);
    };
    for (const auto& r : s.records) {
        csv += r.u_exact + "," + r.v_exact + ",";
        if (!r.ok) {
            csv += ",,,,,,,,,," + r.flags + "\n";
            continue;
        }
        csv += std::string(to_string(r.two_jet)) + "," + to_string(r.stratum) + "," +
               std::to_string(r.codim) + "," + std::to_string(r.delta_disc_sign) + "," +
               field(r.moduli, "alpha") + "," + field(r.moduli, "beta") + "," +
               field(r.moduli, "gamma") + "," + field(r.moduli, "lambda") + "," +
               field(r.moduli, "Lambda") + "," + field(r.moduli, "k1") + "," +
               field(r.moduli, "k2") + "," + r.flags + "\n";
    }
    return csv;
}

} // namespace projjet
