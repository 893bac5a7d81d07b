#include "ipls/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ipls/errors.hpp"
#include "ipls/rounding.hpp"

namespace ipls {

namespace {

using nlohmann::json;

ExprEntry zero_entry() {
    return ExprEntry{make_const(0.0), "0"};
}

ExprEntry parse_entry(const json& cell, const std::vector<std::string>& names) {
    if (!cell.is_string())
        throw ParseError(0, "matrix and rhs entries must be expression strings");
    std::string src = cell.get<std::string>();
    return ExprEntry{parse_expr(src, names), src};
}

std::vector<std::vector<ExprEntry>> parse_grid(const json& g, int rows, int cols,
                                               const std::vector<std::string>& names,
                                               const char* what) {
    if (!g.is_array() || static_cast<int>(g.size()) != rows)
        throw ParseError(0, std::string(what) + ": expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<ExprEntry>> out(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        const json& row = g[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(0, std::string(what) + ": expected " + std::to_string(cols) +
                                    " columns in every row");
        for (const auto& cell : row)
            out[static_cast<std::size_t>(i)].push_back(parse_entry(cell, names));
    }
    return out;
}

std::vector<ExprEntry> parse_vec(const json& g, int rows, const std::vector<std::string>& names,
                                 const char* what) {
    if (!g.is_array() || static_cast<int>(g.size()) != rows)
        throw ParseError(0, std::string(what) + ": expected " + std::to_string(rows) + " entries");
    std::vector<ExprEntry> out;
    for (const auto& cell : g) out.push_back(parse_entry(cell, names));
    return out;
}

}  // namespace

ParametricSystem parse_problem(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!j.is_object()) throw ParseError(0, "problem must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError(0, "missing integer field \"n\"");
    int n = j["n"].get<int>();
    if (n <= 0) throw ParseError(0, "\"n\" must be positive");

    std::vector<std::string> names;
    IntervalVector p;
    if (j.contains("parameters")) {
        const json& ps = j["parameters"];
        if (!ps.is_array()) throw ParseError(0, "\"parameters\" must be an array");
        for (const auto& q : ps) {
            if (!q.is_object() || !q.contains("name") || !q.contains("interval"))
                throw ParseError(0, "each parameter needs \"name\" and \"interval\"");
            const json& iv = q["interval"];
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
                throw ParseError(0, "parameter interval must be [lo, hi]");
            double lo = iv[0].get<double>();
            double hi = iv[1].get<double>();
            if (rounding::rigorous()) {
                lo = rounding::next_down(lo);
                hi = rounding::next_up(hi);
            }
            names.push_back(q["name"].get<std::string>());
            p.emplace_back(lo, hi);
        }
    }

    ParametricSystem sys;
    sys.n = n;
    sys.K = static_cast<int>(p.size());
    sys.p = std::move(p);
    sys.names = std::move(names);

    const bool complex = j.contains("A_re") || j.contains("A_im");
    if (complex) {
        if (!j.contains("A_re") || !j.contains("A_im") || !j.contains("b_re") ||
            !j.contains("b_im"))
            throw ParseError(0, "complex problems need A_re, A_im, b_re and b_im");
        auto A_re = parse_grid(j["A_re"], n, n, sys.names, "A_re");
        auto A_im = parse_grid(j["A_im"], n, n, sys.names, "A_im");
        auto b_re = parse_vec(j["b_re"], n, sys.names, "b_re");
        auto b_im = parse_vec(j["b_im"], n, sys.names, "b_im");
        return complex_to_real(A_re, A_im, b_re, b_im, sys.p, sys.names);
    }

    if (!j.contains("A") || !j.contains("b"))
        throw ParseError(0, "problem needs \"A\" and \"b\"");
    sys.A = parse_grid(j["A"], n, n, sys.names, "A");
    sys.b = parse_vec(j["b"], n, sys.names, "b");
    return sys;
}

ParametricSystem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string export_problem(const ParametricSystem& sys) {
    json j;
    j["n"] = sys.n;
    json ps = json::array();
    for (int k = 0; k < sys.K; ++k) {
        json q;
        q["name"] = sys.names[static_cast<std::size_t>(k)];
        q["interval"] = {sys.p[static_cast<std::size_t>(k)].lo(),
                         sys.p[static_cast<std::size_t>(k)].hi()};
        ps.push_back(q);
    }
    j["parameters"] = ps;
    json A = json::array();
    for (const auto& row : sys.A) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.src);
        A.push_back(r);
    }
    j["A"] = A;
    json b = json::array();
    for (const auto& e : sys.b) b.push_back(e.src);
    j["b"] = b;
    return j.dump(2);
}

IntervalAffineSystem affine_transform(const ParametricSystem& sys) {
    const int n = sys.n;
    const int K = sys.K;
    std::vector<RAF> params;
    params.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        params.push_back(RAF::from_parameter(k + 1, sys.p[static_cast<std::size_t>(k)], K));

    IntervalAffineSystem out;
    out.C0 = Mat::Zero(n, n);
    out.Cr = Mat::Zero(n, n);
    out.Ck.assign(static_cast<std::size_t>(K), Mat::Zero(n, n));
    out.c0 = Vec::Zero(n);
    out.cr = Vec::Zero(n);
    out.ck.assign(static_cast<std::size_t>(K), Vec::Zero(n));

    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj) {
            const ExprEntry& e = sys.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            RAF v = e.expr ? eval_raf(*e.expr, params) : RAF::constant(0.0, K);
            out.C0(i, jj) = v.center();
            for (int k = 0; k < K; ++k) out.Ck[static_cast<std::size_t>(k)](i, jj) = v.dev()(k);
            out.Cr(i, jj) = v.err();
        }
        const ExprEntry& e = sys.b[static_cast<std::size_t>(i)];
        RAF v = e.expr ? eval_raf(*e.expr, params) : RAF::constant(0.0, K);
        out.c0(i) = v.center();
        for (int k = 0; k < K; ++k) out.ck[static_cast<std::size_t>(k)](i) = v.dev()(k);
        out.cr(i) = v.err();
    }
    return out;
}

std::optional<AffineLinearSystem> as_affine_linear(const ParametricSystem& sys) {
    const int n = sys.n;
    const int K = sys.K;
    AffineLinearSystem out;
    out.A0 = Mat::Zero(n, n);
    out.Ak.assign(static_cast<std::size_t>(K), Mat::Zero(n, n));
    out.b0 = Vec::Zero(n);
    out.bk.assign(static_cast<std::size_t>(K), Vec::Zero(n));
    out.p = sys.p;
    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj) {
            const ExprEntry& e = sys.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            AffinePart part = e.expr ? extract_affine(*e.expr, K) : AffinePart{true, 0.0, Vec::Zero(K)};
            if (!part.affine) return std::nullopt;
            out.A0(i, jj) = part.c;
            for (int k = 0; k < K; ++k) out.Ak[static_cast<std::size_t>(k)](i, jj) = part.lin(k);
        }
        const ExprEntry& e = sys.b[static_cast<std::size_t>(i)];
        AffinePart part = e.expr ? extract_affine(*e.expr, K) : AffinePart{true, 0.0, Vec::Zero(K)};
        if (!part.affine) return std::nullopt;
        out.b0(i) = part.c;
        for (int k = 0; k < K; ++k) out.bk[static_cast<std::size_t>(k)](i) = part.lin(k);
    }
    return out;
}

IntervalAffineSystem to_interval_affine(const AffineLinearSystem& sys) {
    const int n = sys.n();
    const int K = sys.K();
    std::vector<RAF> params;
    params.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        params.push_back(RAF::from_parameter(k + 1, sys.p[static_cast<std::size_t>(k)], K));

    IntervalAffineSystem out;
    out.C0 = Mat::Zero(n, n);
    out.Cr = Mat::Zero(n, n);
    out.Ck.assign(static_cast<std::size_t>(K), Mat::Zero(n, n));
    out.c0 = Vec::Zero(n);
    out.cr = Vec::Zero(n);
    out.ck.assign(static_cast<std::size_t>(K), Vec::Zero(n));

    auto fill = [&](double a0, auto coeff, int i, int jj, bool rhs) {
        RAF acc = RAF::constant(a0, K);
        for (int k = 0; k < K; ++k) {
            double s = coeff(k);
            if (s != 0.0) acc = acc + params[static_cast<std::size_t>(k)].scale(s);
        }
        if (rhs) {
            out.c0(i) = acc.center();
            for (int k = 0; k < K; ++k) out.ck[static_cast<std::size_t>(k)](i) = acc.dev()(k);
            out.cr(i) = acc.err();
        } else {
            out.C0(i, jj) = acc.center();
            for (int k = 0; k < K; ++k) out.Ck[static_cast<std::size_t>(k)](i, jj) = acc.dev()(k);
            out.Cr(i, jj) = acc.err();
        }
    };

    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj)
            fill(sys.A0(i, jj),
                 [&](int k) { return sys.Ak[static_cast<std::size_t>(k)](i, jj); }, i, jj, false);
        fill(sys.b0(i), [&](int k) { return sys.bk[static_cast<std::size_t>(k)](i); }, i, 0, true);
    }
    return out;
}

Mat eval_matrix(const ParametricSystem& sys, const Vec& p) {
    Mat out = Mat::Zero(sys.n, sys.n);
    for (int i = 0; i < sys.n; ++i)
        for (int jj = 0; jj < sys.n; ++jj) {
            const ExprEntry& e = sys.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            out(i, jj) = e.expr ? eval_point(*e.expr, p) : 0.0;
        }
    return out;
}

Vec eval_rhs(const ParametricSystem& sys, const Vec& p) {
    Vec out = Vec::Zero(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        const ExprEntry& e = sys.b[static_cast<std::size_t>(i)];
        out(i) = e.expr ? eval_point(*e.expr, p) : 0.0;
    }
    return out;
}

ParametricSystem complex_to_real(const std::vector<std::vector<ExprEntry>>& A_re,
                                 const std::vector<std::vector<ExprEntry>>& A_im,
                                 const std::vector<ExprEntry>& b_re,
                                 const std::vector<ExprEntry>& b_im,
                                 const IntervalVector& p,
                                 const std::vector<std::string>& names) {
    const int m = static_cast<int>(A_re.size());
    ParametricSystem out;
    out.n = 2 * m;
    out.K = static_cast<int>(p.size());
    out.p = p;
    out.names = names;
    out.A.assign(static_cast<std::size_t>(2 * m),
                 std::vector<ExprEntry>(static_cast<std::size_t>(2 * m), zero_entry()));
    out.b.assign(static_cast<std::size_t>(2 * m), zero_entry());

    auto negated = [](const ExprEntry& e) {
        if (!e.expr || (e.expr->kind == ParamExpr::Kind::Const && e.expr->value == 0.0))
            return zero_entry();
        return ExprEntry{make_neg(e.expr), "-(" + e.src + ")"};
    };

    for (int i = 0; i < m; ++i) {
        for (int jj = 0; jj < m; ++jj) {
            const auto& re = A_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            const auto& im = A_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            out.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] = re;
            out.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj + m)] = negated(im);
            out.A[static_cast<std::size_t>(i + m)][static_cast<std::size_t>(jj)] = im;
            out.A[static_cast<std::size_t>(i + m)][static_cast<std::size_t>(jj + m)] = re;
        }
        out.b[static_cast<std::size_t>(i)] = b_re[static_cast<std::size_t>(i)];
        out.b[static_cast<std::size_t>(i + m)] = b_im[static_cast<std::size_t>(i)];
    }
    return out;
}

bool class_one(const AffineLinearSystem& sys, int k) {
    if (k < 1 || k > sys.K()) throw IndexOutOfRange("class_one: parameter index out of range");
    const Mat& Akm = sys.Ak[static_cast<std::size_t>(k - 1)];
    const Vec& bkv = sys.bk[static_cast<std::size_t>(k - 1)];
    int rows = 0;
    for (int i = 0; i < sys.n(); ++i) {
        bool touched = bkv(i) != 0.0;
        for (int jj = 0; jj < sys.n() && !touched; ++jj) touched = Akm(i, jj) != 0.0;
        if (touched && ++rows > 1) return false;
    }
    return true;
}

bool class_one_membership(const AffineLinearSystem& sys, const Vec& x) {
    const int n = sys.n();
    const int K = sys.K();
    for (int k = 1; k <= K; ++k)
        if (!class_one(sys, k)) throw NotClassOne(k);

    Vec pc(K), pd(K);
    for (int k = 0; k < K; ++k) {
        pc(k) = sys.p[static_cast<std::size_t>(k)].mid();
        pd(k) = sys.p[static_cast<std::size_t>(k)].rad();
    }
    Mat Ac = sys.A0;
    Vec bc = sys.b0;
    for (int k = 0; k < K; ++k) {
        Ac += pc(k) * sys.Ak[static_cast<std::size_t>(k)];
        bc += pc(k) * sys.bk[static_cast<std::size_t>(k)];
    }
    Vec lhs = (Ac * x - bc).cwiseAbs();
    Vec rhs = Vec::Zero(n);
    for (int k = 0; k < K; ++k)
        rhs += pd(k) *
               (sys.Ak[static_cast<std::size_t>(k)] * x - sys.bk[static_cast<std::size_t>(k)])
                   .cwiseAbs();
    for (int i = 0; i < n; ++i)
        if (lhs(i) > rhs(i) + 1e-9 * (1.0 + rhs(i))) return false;
    return true;
}

}  // namespace ipls
