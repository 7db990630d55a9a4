#include "mapstab/finite_model.hpp"

#include "mapstab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mapstab {

namespace {

std::string idx(std::size_t i, std::size_t j)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string idx(std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

bool odd(int degree) { return (degree & 1) != 0; }

using Coords = std::vector<Rational>;

Coords basis_vector(std::size_t n, std::size_t i)
{
    Coords v(n);
    v[i] = 1;
    return v;
}

Coords mul(const FiniteCdgaData& data, const Coords& a, const Coords& b)
{
    const std::size_t n = data.dim();
    Coords out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(b[j]) == 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                const auto& c = data.product(i, j, k);
                if (sgn(c) != 0) out[k] += a[i] * b[j] * c;
            }
        }
    }
    return out;
}

Coords apply_d(const FiniteCdgaData& data, const Coords& a)
{
    const std::size_t n = data.dim();
    Coords out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(data.diff(i, k)) != 0) out[k] += a[i] * data.diff(i, k);
        }
    }
    return out;
}

std::string show(const FiniteCdgaData& data, const Coords& v)
{
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        if (any) os << " + ";
        os << to_string(v[i]) << '*' << data.basis[i].name;
        any = true;
    }
    return any ? os.str() : "0";
}

}  // namespace

FiniteCdgaData FiniteCdgaData::with_basis(std::vector<BasisElement> basis)
{
    FiniteCdgaData data;
    data.basis = std::move(basis);
    const std::size_t n = data.dim();
    data.structure.assign(n * n * n, Rational(0));
    data.differential.assign(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        data.product(0, i, i) = 1;
        data.product(i, 0, i) = 1;
    }
    return data;
}

VerificationReport verify_finite_cdga(const FiniteCdgaData& data)
{
    VerificationReport report;
    const std::size_t n = data.dim();
    if (n == 0) {
        report.fail("shape", "", "empty basis");
        return report;
    }
    if (data.structure.size() != n * n * n || data.differential.size() != n * n) {
        report.fail("shape", "", "structure constants or differential have the wrong size");
        return report;
    }
    if (data.basis[0].degree != 0) report.fail("unit", "0", "a_0 must be the unit in degree 0");
    for (std::size_t i = 0; i < n; ++i) {
        if (data.basis[i].degree < 0) report.fail("grading", std::to_string(i), "negative basis degree");
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (sgn(data.product(i, j, k)) != 0 &&
                    data.basis[k].degree != data.basis[i].degree + data.basis[j].degree) {
                    report.fail("grading", idx(i, j, k),
                                data.basis[i].name + "*" + data.basis[j].name + " has a component on " +
                                    data.basis[k].name + " of degree " + std::to_string(data.basis[k].degree));
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(data.diff(i, k)) != 0 && data.basis[k].degree != data.basis[i].degree + 1) {
                report.fail("grading", idx(i, k),
                            "d(" + data.basis[i].name + ") has a component on " + data.basis[k].name);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Coords e = basis_vector(n, i);
        if (mul(data, basis_vector(n, 0), e) != e || mul(data, e, basis_vector(n, 0)) != e) {
            report.fail("unit", std::to_string(i), "a_0 does not act as the unit on " + data.basis[i].name);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool negative = odd(data.basis[i].degree) && odd(data.basis[j].degree);
            for (std::size_t k = 0; k < n; ++k) {
                const Rational expected = negative ? Rational(-data.product(j, i, k)) : data.product(j, i, k);
                if (data.product(i, j, k) != expected) {
                    report.fail("commutativity", idx(i, j, k),
                                "c_ij^k = " + to_string(data.product(i, j, k)) + " but (-1)^(|i||j|) c_ji^k = " +
                                    to_string(expected));
                }
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < n; ++l) {
                const Coords ei = basis_vector(n, i), ej = basis_vector(n, j), el = basis_vector(n, l);
                const Coords left = mul(data, mul(data, ei, ej), el);
                const Coords right = mul(data, ei, mul(data, ej, el));
                if (left != right) {
                    report.fail("associativity", idx(i, j, l),
                                "(a_i a_j) a_l = " + show(data, left) + " but a_i (a_j a_l) = " + show(data, right));
                }
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Coords dd = apply_d(data, apply_d(data, basis_vector(n, i)));
        if (std::any_of(dd.begin(), dd.end(), [](const Rational& q) { return sgn(q) != 0; })) {
            report.fail("d^2", std::to_string(i), "d_A(d_A " + data.basis[i].name + ") = " + show(data, dd));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Coords ei = basis_vector(n, i), ej = basis_vector(n, j);
            const Coords left = apply_d(data, mul(data, ei, ej));
            Coords right = mul(data, apply_d(data, ei), ej);
            const Coords second = mul(data, ei, apply_d(data, ej));
            const bool negative = odd(data.basis[i].degree);
            for (std::size_t k = 0; k < n; ++k) right[k] += negative ? Rational(-second[k]) : second[k];
            if (left != right) {
                report.fail("leibniz", idx(i, j),
                            "d(a_i a_j) = " + show(data, left) + " but Leibniz gives " + show(data, right));
            }
        }
    }
    return report;
}

FiniteCdgaPtr FiniteCdga::create(FiniteCdgaData data)
{
    const auto report = verify_finite_cdga(data);
    if (!report.passed()) {
        const auto* f = report.first();
        throw EngineError(ErrorCode::InvalidFiniteModel,
                          "invalid finite model (" + f->check + " at " + f->where + "): " + f->detail);
    }
    return FiniteCdgaPtr(new FiniteCdga(std::move(data)));
}

int FiniteCdga::top_degree() const
{
    int top = 0;
    for (const auto& b : data_.basis) top = std::max(top, b.degree);
    return top;
}

bool FiniteCdga::connected() const
{
    return std::count_if(data_.basis.begin(), data_.basis.end(), [](const BasisElement& b) { return b.degree == 0; }) == 1;
}

bool FiniteCdga::differential_is_zero() const
{
    return std::all_of(data_.differential.begin(), data_.differential.end(),
                       [](const Rational& q) { return sgn(q) == 0; });
}

std::optional<std::size_t> FiniteCdga::unique_of_degree(int degree) const
{
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (data_.basis[i].degree != degree) continue;
        if (found) return std::nullopt;
        found = i;
    }
    return found;
}

std::vector<Rational> FiniteCdga::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const
{
    return mul(data_, a, b);
}

std::vector<Rational> FiniteCdga::apply_differential(const std::vector<Rational>& a) const
{
    return apply_d(data_, a);
}

FiniteCdgaPtr sphere2_model()
{
    static const FiniteCdgaPtr model = FiniteCdga::create(FiniteCdgaData::with_basis({{"1", 0}, {"a", 2}}));
    return model;
}

bool is_sphere2_like(const FiniteCdga& model)
{
    return model.dim() == 2 && model.degree(1) == 2 && model.differential_is_zero() &&
           sgn(model.product(1, 1, 0)) == 0 && sgn(model.product(1, 1, 1)) == 0;
}

std::vector<DualGenerator> dual_basis(const FiniteCdga& model)
{
    std::vector<DualGenerator> out;
    for (std::size_t i = 0; i < model.dim(); ++i) out.push_back({i, -model.degree(i)});
    return out;
}

Rational pairing(const DualGenerator& dual, std::size_t basis_index)
{
    return dual.index == basis_index ? Rational(1) : Rational(0);
}

}  // namespace mapstab
