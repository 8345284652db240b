#include "ldlab/linpoly.hpp"

#include "ldlab/errors.hpp"

namespace ldlab {

LinearizedPoly::LinearizedPoly(const FieldTower& t, int level, int base_exp,
                               std::vector<Felem> coeffs)
    : t_(&t), level_(level), base_exp_(base_exp), c_(std::move(coeffs)) {
    if (base_exp_ < 1) throw ParameterError("base exponent must be >= 1");
    for (const auto& c : c_)
        if (c.level != level_) throw ParameterError("coefficient level mismatch");
}

bool LinearizedPoly::is_zero() const { return b_degree() < 0; }

int LinearizedPoly::b_degree() const {
    for (size_t i = c_.size(); i-- > 0;)
        if (!t_->is_zero(c_[i])) return static_cast<int>(i);
    return -1;
}

Felem LinearizedPoly::eval(const Felem& x) const {
    Felem xe = x.level == level_ ? x : t_->embed(x, level_);
    Felem acc = t_->zero(level_);
    Felem power = xe;  // x^{h^{b*i}} iterated
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) power = t_->frobenius(power, base_exp_);
        if (!t_->is_zero(c_[i])) acc = t_->add(acc, t_->mul(c_[i], power));
    }
    return acc;
}

LinearizedPoly LinearizedPoly::twist(int j, int q_exp) const {
    std::vector<Felem> out = c_;
    for (auto& c : out) c = t_->frobenius(c, q_exp * j);
    return LinearizedPoly(*t_, level_, base_exp_, std::move(out));
}

FhMatrix LinearizedPoly::matrix() const {
    const int dim = t_->degree(level_);
    FhMatrix m(t_->base(), dim, dim);
    for (int j = 0; j < dim; ++j) {
        FhVec unit(dim, 0);
        unit[j] = 1;
        Felem img = eval(t_->from_coords(level_, unit));
        for (int i = 0; i < dim; ++i) m.set(i, j, img.c[i]);
    }
    return m;
}

FhSubspace LinearizedPoly::kernel() const {
    if (is_zero()) throw ParameterError("kernel of the zero linearized polynomial");
    return FhSubspace::from_generators(matrix().kernel());
}

LinearizedPoly LinearizedPoly::add(const LinearizedPoly& o) const {
    if (level_ != o.level_ || base_exp_ != o.base_exp_)
        throw ParameterError("linearized polynomial shape mismatch");
    std::vector<Felem> out(std::max(c_.size(), o.c_.size()), t_->zero(level_));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < c_.size()) out[i] = t_->add(out[i], c_[i]);
        if (i < o.c_.size()) out[i] = t_->add(out[i], o.c_[i]);
    }
    return LinearizedPoly(*t_, level_, base_exp_, std::move(out));
}

}  // namespace ldlab
