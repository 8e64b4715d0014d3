#include "symldf/model.hpp"

#include "symldf/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "config_text.hpp"

namespace symldf {

void ModelParams::validate() const {
    const auto check = [](double v, const char* name) {
        if (!std::isfinite(v)) {
            throw InvalidParameter(std::string(name) + " must be finite");
        }
    };
    check(b_z, "b_z");
    check(gamma_bath, "gamma_bath");
    check(n_bath, "n_bath");
    check(gamma_dephase, "gamma_dephase");
    if (gamma_bath < 0.0) throw InvalidParameter("gamma_bath must be >= 0");
    if (n_bath < 0.0) throw InvalidParameter("n_bath must be >= 0");
    if (gamma_dephase < 0.0) throw InvalidParameter("gamma_dephase must be >= 0");
}

double ModelParams::kappa() const {
    if (n_bath <= 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(n_bath / (n_bath + 1.0));
}

std::string to_config_text(const ModelParams& p) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "b_z = " << p.b_z << '\n';
    os << "gamma_bath = " << p.gamma_bath << '\n';
    os << "n_bath = " << p.n_bath << '\n';
    os << "gamma_dephase = " << p.gamma_dephase << '\n';
    return os.str();
}

ModelParams params_from_map(const std::map<std::string, std::string>& kv) {
    ModelParams p;
    static const std::vector<std::string> known{"b_z", "gamma_bath", "n_bath", "gamma_dephase"};
    for (const auto& [key, value] : kv) {
        double* slot = nullptr;
        if (key == "b_z") slot = &p.b_z;
        else if (key == "gamma_bath") slot = &p.gamma_bath;
        else if (key == "n_bath") slot = &p.n_bath;
        else if (key == "gamma_dephase") slot = &p.gamma_dephase;
        if (slot == nullptr) {
            throw ConfigError(detail::unknown_key_message(key, known));
        }
        *slot = detail::parse_real(value, key);
    }
    p.validate();
    return p;
}

ModelParams params_from_config_text(const std::string& text) {
    return params_from_map(detail::parse_flat_pairs(text));
}

Matrix pauli_x() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Matrix pauli_y() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = -kI;
    m(1, 0) = kI;
    return m;
}

Matrix pauli_z() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

Matrix site_operator(const Matrix& op, int site) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw DimensionMismatch("site_operator expects a 2x2 operator");
    }
    if (site < 0 || site > 2) {
        throw InvalidParameter("site must be 0, 1 or 2");
    }
    const Matrix id = Matrix::Identity(2, 2);
    Matrix out = (site == 0) ? op : id;
    for (int s = 1; s < 3; ++s) {
        out = kron(out, s == site ? op : id);
    }
    return out;
}

Vector basis_state(int s0, int s1, int s2) {
    Vector v = Vector::Zero(kHilbertDim);
    v(4 * s0 + 2 * s1 + s2) = 1.0;
    return v;
}

Matrix build_hamiltonian(const ModelParams& p) {
    p.validate();
    Matrix h = Matrix::Zero(kHilbertDim, kHilbertDim);
    std::array<Matrix, 3> sx;
    for (int i = 0; i < 3; ++i) {
        sx[i] = site_operator(pauli_x(), i);
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            h += sx[i] * sx[j];
        }
    }
    for (int i = 0; i < 3; ++i) {
        h += p.b_z * site_operator(pauli_z(), i);
    }
    return h;
}

const char* to_string(JumpChannel c) {
    switch (c) {
    case JumpChannel::plus: return "plus";
    case JumpChannel::minus: return "minus";
    case JumpChannel::deph0: return "deph0";
    case JumpChannel::deph1: return "deph1";
    case JumpChannel::deph2: return "deph2";
    }
    return "unknown";
}

std::vector<JumpOperator> build_jump_operators(const ModelParams& p) {
    p.validate();
    std::vector<JumpOperator> ops;
    ops.reserve(5);
    ops.push_back({JumpChannel::plus,
                   std::sqrt(p.gamma_bath * p.n_bath) * site_operator(sigma_plus(), 0)});
    ops.push_back({JumpChannel::minus,
                   std::sqrt(p.gamma_bath * (p.n_bath + 1.0)) * site_operator(sigma_minus(), 0)});
    const Matrix excited = sigma_plus() * sigma_minus();
    const std::array<JumpChannel, 3> deph{JumpChannel::deph0, JumpChannel::deph1,
                                          JumpChannel::deph2};
    for (int i = 0; i < 3; ++i) {
        ops.push_back({deph[i], std::sqrt(p.gamma_dephase) * site_operator(excited, i)});
    }
    return ops;
}

SymmetryBases build_symmetry_bases() {
    const double r = 1.0 / std::sqrt(2.0);
    SymmetryBases b;
    int k = 0;
    for (int s0 = 0; s0 < 2; ++s0) {
        b.sym[k++] = basis_state(s0, 0, 0);
        b.sym[k++] = r * (basis_state(s0, 0, 1) + basis_state(s0, 1, 0));
        b.sym[k++] = basis_state(s0, 1, 1);
        b.antisym[s0] = r * (basis_state(s0, 0, 1) - basis_state(s0, 1, 0));
    }

    b.exchange = Matrix::Zero(kHilbertDim, kHilbertDim);
    for (int s0 = 0; s0 < 2; ++s0) {
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                b.exchange(4 * s0 + 2 * s2 + s1, 4 * s0 + 2 * s1 + s2) = 1.0;
            }
        }
    }

    b.antisym_projector = Matrix::Zero(kHilbertDim, kHilbertDim);
    for (const auto& v : b.antisym) {
        b.antisym_projector += v * v.adjoint();
    }
    return b;
}

const SymmetryBases& symmetry_bases() {
    static const SymmetryBases bases = build_symmetry_bases();
    return bases;
}

Vector mixed_sector_state() {
    const double r = 1.0 / std::sqrt(2.0);
    Vector v = Vector::Zero(kHilbertDim);
    for (int s0 = 0; s0 < 2; ++s0) {
        v += 0.5 * (basis_state(s0, 0, 0) +
                    r * (basis_state(s0, 0, 1) - basis_state(s0, 1, 0)));
    }
    return v;
}

} // namespace symldf
