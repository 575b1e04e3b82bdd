#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xg {

enum class Field { Real, Complex };

/// Dense N-index array over R or C, row-major with the first index major.
/// The field tag is carried explicitly; Real tensors keep every imaginary
/// part at exactly 0.0.
class NTensor {
public:
    using Scalar = std::complex<double>;

    /// Zero-filled tensor.
    NTensor(std::vector<std::size_t> dims, Field field);

    static NTensor from_real(std::vector<std::size_t> dims, std::vector<double> entries);
    static NTensor from_complex(std::vector<std::size_t> dims, std::vector<Scalar> entries);

    std::size_t order() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return entries_.size(); }
    Field field() const { return field_; }

    const std::vector<Scalar>& entries() const { return entries_; }
    std::vector<Scalar>& entries() { return entries_; }

    Scalar operator[](std::size_t flat) const { return entries_[flat]; }
    Scalar& operator[](std::size_t flat) { return entries_[flat]; }

    Scalar at(std::span<const std::size_t> index) const { return entries_[flat_index(index)]; }
    void set(std::span<const std::size_t> index, Scalar v) { entries_[flat_index(index)] = v; }

    std::size_t flat_index(std::span<const std::size_t> index) const;
    std::vector<std::size_t> unflatten(std::size_t flat) const;

    bool same_shape(const NTensor& other) const;

    /// Real parts of all entries; requires a Real-tagged tensor.
    std::vector<double> real_entries() const;

    /// Re-tag as Real after an operation known to produce real entries;
    /// throws unless every imaginary part is exactly zero.
    void tag_real();

private:
    std::vector<std::size_t> dims_;
    std::vector<Scalar> entries_;
    Field field_;
};

/// out[I] = a[I]*b[I]; Complex-tagged iff either input is.
NTensor entrywise_product(const NTensor& a, const NTensor& b);

/// <a,b> = sum_I a[I]*b[I], bilinear (no conjugation).
std::complex<double> inner_product(const NTensor& a, const NTensor& b);

}  // namespace xg
