#include "qhe/filtration.hpp"

#include "qhe/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace qhe {

namespace {

Vec unit_vec(int n, int i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

std::string vec_label(const FiniteDimAlgebra& a, const Vec& v) {
    std::string s;
    for (int b = 0; b < a.dim(); ++b) {
        if (Field::is_zero(v[b])) continue;
        if (!s.empty()) s += "+";
        if (v[b] != 1) s += "(" + a.field().format(v[b]) + ")";
        s += a.element(b).label;
    }
    return s.empty() ? "0" : s;
}

Mat invert(const Field& f, const Mat& m) {
    int n = m.rows();
    Mat aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    RrefResult rr = rref(f, std::move(aug));
    if (rr.rank() < n || rr.pivots[n - 1] != n - 1) throw Error(ErrorKind::internal, "change of basis is singular");
    Mat inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv(r, c) = rr.reduced(r, n + c);
    return inv;
}

}  // namespace

IdealFiltration describe_filtration(const FiniteDimAlgebra& a, const std::string& kind) {
    IdealFiltration f;
    f.kind = kind;
    f.N = a.filtration_length();
    f.dims.assign(f.N + 1, 0);
    for (const auto& e : a.basis())
        for (int j = 0; j <= e.level; ++j) ++f.dims[j];
    return f;
}

std::vector<Echelon> level_chain(const FiniteDimAlgebra& a) {
    int N = a.filtration_length();
    std::vector<Echelon> chain(N + 1, Echelon(a.dim()));
    for (int b = 0; b < a.dim(); ++b)
        for (int j = 0; j <= a.element(b).level; ++j) chain[j].insert(a.field(), unit_vec(a.dim(), b));
    return chain;
}

std::vector<Echelon> radical_powers(const FiniteDimAlgebra& a) {
    const Field& f = a.field();
    std::vector<Echelon> chain;
    Echelon all(a.dim()), rad(a.dim());
    for (int b = 0; b < a.dim(); ++b) {
        all.insert(f, unit_vec(a.dim(), b));
        if (a.element(b).radical) rad.insert(f, unit_vec(a.dim(), b));
    }
    chain.push_back(all);
    Echelon cur = rad;
    while (cur.rank() > 0) {
        chain.push_back(cur);
        Echelon next(a.dim());
        for (const auto& r : cur.rows()) {
            SparseVec rs = to_sparse(r);
            for (int b = 0; b < a.dim(); ++b) {
                if (!a.element(b).radical) continue;
                SparseVec p = a.multiply(rs, SparseVec{{b, Scalar(1)}});
                if (!p.empty()) next.insert(f, to_dense(p, a.dim()));
            }
        }
        if (next.rank() == cur.rank()) throw Error(ErrorKind::internal, "radical is not nilpotent");
        cur = std::move(next);
    }
    chain.push_back(Echelon(a.dim()));
    return chain;
}

FiniteDimAlgebra adapt_to_filtration(const FiniteDimAlgebra& a, const std::vector<Echelon>& chain) {
    const Field& f = a.field();
    const int n = a.dim();
    const int N = static_cast<int>(chain.size()) - 1;

    std::vector<int> lev(n, 0);
    for (int b = 0; b < n; ++b)
        for (int j = 1; j < N; ++j)
            if (chain[j].contains(f, unit_vec(n, b))) lev[b] = j;
    bool adapted = true;
    for (int j = 0; j <= N && adapted; ++j) {
        int count = static_cast<int>(std::count_if(lev.begin(), lev.end(), [&](int l) { return l >= j; }));
        if (j == N) count = 0;
        if (count != chain[j].rank()) adapted = false;
    }
    if (adapted) {
        FiniteDimAlgebra out = a;
        for (int b = 0; b < n; ++b) out.mutable_basis()[b].level = lev[b];
        return out;
    }

    // Build a new basis slot by slot; two-sided ideals split along slots.
    std::vector<Vec> columns;
    std::vector<BasisElement> basis;
    for (int y = 0; y < a.num_vertices(); ++y)
        for (int x = 0; x < a.num_vertices(); ++x) {
            const auto& slot = a.hom(x, y);
            if (slot.empty()) continue;
            int m = static_cast<int>(slot.size());
            Echelon built(m);
            auto add = [&](const Vec& local, int level, bool radical) {
                if (!built.insert(f, local)) return;
                Vec global(n);
                for (int i = 0; i < m; ++i) global[slot[i]] = local[i];
                BasisElement e;
                e.source = x;
                e.target = y;
                e.level = level;
                e.radical = radical;
                // graded only when homogeneous
                e.grade = -1;
                for (int i = 0; i < m; ++i)
                    if (!Field::is_zero(local[i])) {
                        int g = a.element(slot[i]).grade;
                        e.grade = e.grade < 0 || e.grade == g ? g : -2;
                    }
                if (e.grade < 0) e.grade = 0;
                e.label = vec_label(a, global);
                basis.push_back(e);
                columns.push_back(std::move(global));
            };
            for (int j = N - 1; j >= 0; --j) {
                if (j == 0 && x == y) add(unit_vec(m, static_cast<int>(
                                                              std::find(slot.begin(), slot.end(), a.unit(x)) -
                                                              slot.begin())),
                                          0, false);
                for (const auto& r : chain[j].rows()) {
                    Vec local(m);
                    bool inside = true;
                    for (int b = 0; b < n && inside; ++b) {
                        if (Field::is_zero(r[b])) continue;
                        auto it = std::find(slot.begin(), slot.end(), b);
                        if (it == slot.end()) inside = false;
                        else local[it - slot.begin()] = r[b];
                    }
                    // rows mixing slots are split by the idempotents
                    if (!inside) {
                        SparseVec rs = to_sparse(r);
                        SparseVec proj = a.multiply(a.multiply(SparseVec{{a.unit(y), Scalar(1)}}, rs),
                                                    SparseVec{{a.unit(x), Scalar(1)}});
                        local.assign(m, Scalar(0));
                        for (const auto& [b, c] : proj) local[std::find(slot.begin(), slot.end(), b) - slot.begin()] = c;
                    }
                    if (!is_zero(local)) add(local, j, true);
                }
            }
            if (built.rank() != m) throw Error(ErrorKind::internal, "filtration does not span a slot");
        }

    Mat T = Mat::from_columns(columns, n);
    Mat Tinv = invert(f, T);
    FiniteDimAlgebra out(f, a.name(), a.vertices(), basis);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (basis[v].target != basis[u].source) continue;
            Vec p = a.multiply(columns[u], columns[v]);
            if (is_zero(p)) continue;
            out.set_product(u, v, to_sparse(apply(f, Tinv, p)));
        }
    out.set_admissible(a.admissible());
    out.set_homogeneous(a.homogeneous());
    out.finalize();
    return out;
}

FiniteDimAlgebra validate_filtration(const FiniteDimAlgebra& a, const std::vector<Echelon>& chain) {
    const Field& f = a.field();
    const int n = a.dim();
    const int N = static_cast<int>(chain.size()) - 1;
    if (N < 1 || chain.front().rank() != n || chain.back().rank() != 0)
        throw FiltrationError(ErrorKind::not_an_ideal, 0, "chain must run from A down to 0");
    for (int j = 1; j <= N; ++j) {
        if (chain[j].rank() >= chain[j - 1].rank())
            throw FiltrationError(ErrorKind::not_an_ideal, j, "chain is not strictly descending");
        for (const auto& r : chain[j].rows())
            if (!chain[j - 1].contains(f, r))
                throw FiltrationError(ErrorKind::not_an_ideal, j, "I_j is not contained in I_{j-1}");
    }

    for (int j = 1; j < N; ++j)
        for (const auto& r : chain[j].rows()) {
            SparseVec rs = to_sparse(r);
            for (int b = 0; b < n; ++b) {
                SparseVec bv{{b, Scalar(1)}};
                if (!chain[j].contains(f, to_dense(a.multiply(bv, rs), n)))
                    throw FiltrationError(ErrorKind::not_an_ideal, j,
                                          "left ideal property fails: " + a.element(b).label + " · " +
                                              vec_label(a, r) + " leaves I_j");
                if (!chain[j].contains(f, to_dense(a.multiply(rs, bv), n)))
                    throw FiltrationError(ErrorKind::not_an_ideal, j,
                                          "right ideal property fails: " + vec_label(a, r) + " · " +
                                              a.element(b).label + " leaves I_j");
            }
        }

    for (int i = 1; i < N; ++i)
        for (int j = 1; j < N; ++j)
            for (const auto& r : chain[i].rows())
                for (const auto& s : chain[j].rows()) {
                    Vec p = a.multiply(r, s);
                    bool ok = i + j >= N ? is_zero(p) : chain[i + j].contains(f, p);
                    if (!ok)
                        throw FiltrationError(ErrorKind::not_multiplicative, i,
                                              "I_" + std::to_string(i) + " I_" + std::to_string(j) +
                                                  " is not inside I_" + std::to_string(i + j));
                }

    // A / I_1 is semisimple exactly when I_1 contains the radical; each layer
    // is then annihilated by I_1 on both sides because of the check above.
    for (int b = 0; b < n; ++b)
        if (a.element(b).radical && !chain[1].contains(f, unit_vec(n, b)))
            throw FiltrationError(ErrorKind::layer_not_semisimple, 0,
                                  "A/I_1 is not semisimple: radical element " + a.element(b).label +
                                      " lies outside I_1");
    for (int j = 0; j < N; ++j)
        for (const auto& r : chain[j].rows()) {
            SparseVec rs = to_sparse(r);
            for (const auto& s : chain[1].rows()) {
                SparseVec ss = to_sparse(s);
                Vec l = to_dense(a.multiply(ss, rs), n), rr = to_dense(a.multiply(rs, ss), n);
                bool ok = j + 1 >= N ? is_zero(l) && is_zero(rr) : chain[j + 1].contains(f, l) && chain[j + 1].contains(f, rr);
                if (!ok) throw FiltrationError(ErrorKind::layer_not_semisimple, j, "I_1 does not annihilate the layer");
            }
        }
    return adapt_to_filtration(a, chain);
}

FiniteDimAlgebra radical_filtration(const FiniteDimAlgebra& a) {
    if (!a.admissible())
        throw Error(ErrorKind::non_admissible_relations,
                    "some relation has a term of length < 2; supply the filtration explicitly");
    return validate_filtration(a, radical_powers(a));
}

FiniteDimAlgebra grading_filtration(const FiniteDimAlgebra& a) {
    if (!a.homogeneous()) throw Error(ErrorKind::not_graded, "relations are not homogeneous for the grading");
    int top = 0;
    for (const auto& e : a.basis()) top = std::max(top, e.grade);
    std::vector<Echelon> chain(top + 2, Echelon(a.dim()));
    for (int b = 0; b < a.dim(); ++b)
        for (int j = 0; j <= a.element(b).grade; ++j) chain[j].insert(a.field(), unit_vec(a.dim(), b));
    return validate_filtration(a, chain);
}

std::vector<Echelon> load_filtration_file(const FiniteDimAlgebra& a, const std::string& path) {
    using nlohmann::json;
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::input, "cannot open filtration file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::input, path + ": " + e.what());
    }
    if (!j.contains("layers") || !j.at("layers").is_array())
        throw Error(ErrorKind::input, "filtration file needs a 'layers' list (I_1, I_2, ...)");
    const Field& f = a.field();
    std::vector<Echelon> chain;
    Echelon all(a.dim());
    for (int b = 0; b < a.dim(); ++b) all.insert(f, unit_vec(a.dim(), b));
    chain.push_back(all);
    for (const auto& layer : j.at("layers")) {
        Echelon e(a.dim());
        for (const auto& entry : layer) {
            if (entry.is_string()) {
                int b = a.find_label(entry.get<std::string>());
                if (b < 0) throw Error(ErrorKind::input, "unknown basis label '" + entry.get<std::string>() + "'");
                e.insert(f, unit_vec(a.dim(), b));
            } else if (entry.is_array()) {
                if (static_cast<int>(entry.size()) != a.dim())
                    throw Error(ErrorKind::input, "coordinate vector length differs from the algebra dimension");
                Vec v;
                for (const auto& c : entry) v.push_back(f.parse(c.is_string() ? c.get<std::string>() : c.dump()));
                e.insert(f, std::move(v));
            } else {
                throw Error(ErrorKind::input, "layer entries must be labels or coordinate vectors");
            }
        }
        chain.push_back(std::move(e));
    }
    chain.push_back(Echelon(a.dim()));
    return chain;
}

bool same_levels(const FiniteDimAlgebra& a, const FiniteDimAlgebra& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        if (a.element(i).label != b.element(i).label || a.element(i).level != b.element(i).level) return false;
    return true;
}

std::vector<std::pair<int, int>> loewy_lengths(const FiniteDimAlgebra& a) {
    std::vector<std::pair<int, int>> out(a.num_vertices(), {0, 0});
    for (const auto& e : a.basis()) {
        out[e.source].first = std::max(out[e.source].first, e.level + 1);
        out[e.target].second = std::max(out[e.target].second, e.level + 1);
    }
    return out;
}

std::vector<Echelon> socle_filtration(const FiniteDimAlgebra& a) {
    const Field& f = a.field();
    const int n = a.dim();
    std::vector<Echelon> rad = radical_powers(a);
    const int L = static_cast<int>(rad.size()) - 1;
    std::vector<Echelon> soc;
    for (int m = 0; m <= L; ++m) {
        // soc^m = {v : rad^m v = 0}
        std::vector<Vec> rows;
        for (const auto& r : rad[m].rows()) {
            SparseVec rs = to_sparse(r);
            std::vector<SparseVec> cols(n);
            for (int b = 0; b < n; ++b) cols[b] = a.multiply(rs, SparseVec{{b, Scalar(1)}});
            for (int out = 0; out < n; ++out) {
                Vec row(n);
                bool any = false;
                for (int b = 0; b < n; ++b) {
                    row[b] = coefficient(cols[b], out);
                    any = any || !Field::is_zero(row[b]);
                }
                if (any) rows.push_back(std::move(row));
            }
        }
        Echelon e(n);
        if (rows.empty()) {
            for (int b = 0; b < n; ++b) e.insert(f, unit_vec(n, b));
        } else {
            for (auto& k : kernel_basis(f, Mat::from_rows(rows, n))) e.insert(f, std::move(k));
        }
        soc.push_back(std::move(e));
    }
    return soc;
}

bool is_rigid(const FiniteDimAlgebra& a) {
    std::vector<Echelon> rad = radical_powers(a);
    std::vector<Echelon> soc = socle_filtration(a);
    const int L = static_cast<int>(rad.size()) - 1;
    for (int j = 0; j <= L; ++j)
        if (!(rad[j] == soc[L - j])) return false;
    return true;
}

}  // namespace qhe
