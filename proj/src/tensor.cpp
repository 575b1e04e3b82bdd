#include "xg/tensor.hpp"

#include "xg/errors.hpp"

#include <limits>
#include <string>

namespace xg {

namespace {

std::size_t checked_entry_count(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw ShapeError("tensor order must be at least 1");
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeError("tensor dimension must be positive");
        if (n > std::numeric_limits<std::size_t>::max() / d)
            throw ShapeError("tensor entry count overflows");
        n *= d;
    }
    return n;
}

}  // namespace

NTensor::NTensor(std::vector<std::size_t> dims, Field field)
    : dims_(std::move(dims)), entries_(checked_entry_count(dims_)), field_(field) {}

NTensor NTensor::from_real(std::vector<std::size_t> dims, std::vector<double> entries) {
    NTensor t(std::move(dims), Field::Real);
    if (entries.size() != t.size()) throw ShapeError("entry count does not match dims");
    for (std::size_t i = 0; i < entries.size(); ++i) t.entries_[i] = Scalar(entries[i], 0.0);
    return t;
}

NTensor NTensor::from_complex(std::vector<std::size_t> dims, std::vector<Scalar> entries) {
    NTensor t(std::move(dims), Field::Complex);
    if (entries.size() != t.size()) throw ShapeError("entry count does not match dims");
    t.entries_ = std::move(entries);
    return t;
}

std::size_t NTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw ShapeError("multi-index order mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (index[k] >= dims_[k])
            throw ShapeError("index " + std::to_string(index[k]) + " out of range for axis " +
                             std::to_string(k));
        flat = flat * dims_[k] + index[k];
    }
    return flat;
}

std::vector<std::size_t> NTensor::unflatten(std::size_t flat) const {
    std::vector<std::size_t> index(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        index[k] = flat % dims_[k];
        flat /= dims_[k];
    }
    return index;
}

bool NTensor::same_shape(const NTensor& other) const { return dims_ == other.dims_; }

std::vector<double> NTensor::real_entries() const {
    if (field_ != Field::Real) throw UsageError("real_entries() requires a Real-tagged tensor");
    std::vector<double> out(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i].real();
    return out;
}

void NTensor::tag_real() {
    for (const Scalar& v : entries_) {
        if (v.imag() != 0.0) throw UsageError("tag_real() on a tensor with nonzero imaginary part");
    }
    field_ = Field::Real;
}

NTensor entrywise_product(const NTensor& a, const NTensor& b) {
    if (!a.same_shape(b)) throw ShapeError("entrywise_product: shape mismatch");
    const Field field =
        (a.field() == Field::Complex || b.field() == Field::Complex) ? Field::Complex : Field::Real;
    NTensor out(a.dims(), field);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (field == Field::Real) {
            // Stay exactly real: no complex multiply that could fabricate -0.0*x terms.
            out[i] = NTensor::Scalar(a[i].real() * b[i].real(), 0.0);
        } else {
            out[i] = a[i] * b[i];
        }
    }
    return out;
}

std::complex<double> inner_product(const NTensor& a, const NTensor& b) {
    if (!a.same_shape(b)) throw ShapeError("inner_product: shape mismatch");
    std::complex<double> sum = 0.0;
    if (a.field() == Field::Real && b.field() == Field::Real) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real();
        return {s, 0.0};
    }
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace xg
