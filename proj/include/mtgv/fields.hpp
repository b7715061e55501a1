#pragma once

#include <Eigen/Core>

#include <filesystem>

namespace mtgv {

enum class Domain { Face, Edge, Line, Curve };

/// Multi-channel piecewise-constant data over one kind of mesh element.
///
/// Storage is element-major rows and one column per channel, so a single
/// channel is a contiguous column that linear solvers can consume directly.
template <Domain D>
struct Field {
    Eigen::MatrixXd values;

    Field() = default;
    Field(Eigen::Index count, Eigen::Index channels)
        : values(Eigen::MatrixXd::Zero(count, channels)) {}
    explicit Field(Eigen::MatrixXd v) : values(std::move(v)) {}

    Eigen::Index size() const { return values.rows(); }
    Eigen::Index channels() const { return values.cols(); }

    auto row(Eigen::Index i) { return values.row(i); }
    auto row(Eigen::Index i) const { return values.row(i); }

    Field& operator+=(const Field& o) { values += o.values; return *this; }
    Field& operator-=(const Field& o) { values -= o.values; return *this; }
    Field& operator*=(double s) { values *= s; return *this; }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }
    friend Field operator*(Field a, double s) { return a *= s; }

    static Field zeros(Eigen::Index count, Eigen::Index channels) { return Field(count, channels); }
};

using FaceField = Field<Domain::Face>;
using EdgeField = Field<Domain::Edge>;
using LineField = Field<Domain::Line>;
using CurveField = Field<Domain::Curve>;

/// Debug dump: one row per element, `index,c0,c1,...`.
template <Domain D>
void write_field_csv(const Field<D>& field, const std::filesystem::path& path);

}  // namespace mtgv
