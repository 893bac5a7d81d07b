#include "ipls/interval.hpp"

namespace ipls {

IntervalVector hull(const std::vector<IntervalVector>& boxes) {
    if (boxes.empty()) throw EmptySet();
    IntervalVector out = boxes.front();
    for (std::size_t b = 1; b < boxes.size(); ++b) {
        if (boxes[b].size() != out.size()) throw DimensionMismatch("hull of boxes of unequal dimension");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = hull(out[i], boxes[b][i]);
    }
    return out;
}

bool contains(const IntervalVector& outer, const IntervalVector& inner) {
    if (outer.size() != inner.size()) throw DimensionMismatch("containment of boxes of unequal dimension");
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (!outer[i].contains(inner[i])) return false;
    return true;
}

IntervalVector matvec(const Mat& A, const IntervalVector& x) {
    if (A.cols() != static_cast<Eigen::Index>(x.size())) throw DimensionMismatch("matvec");
    IntervalVector out(static_cast<std::size_t>(A.rows()));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Interval acc = Interval::point(0.0);
        for (Eigen::Index j = 0; j < A.cols(); ++j) acc = acc + Interval::point(A(i, j)) * x[j];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

IntervalVector matvec(const IntervalMatrix& A, const IntervalVector& x) {
    if (A.cols != static_cast<int>(x.size())) throw DimensionMismatch("matvec");
    IntervalVector out(static_cast<std::size_t>(A.rows));
    for (int i = 0; i < A.rows; ++i) {
        Interval acc = Interval::point(0.0);
        for (int j = 0; j < A.cols; ++j) acc = acc + A.at(i, j) * x[j];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

IntervalMatrix matmat(const IntervalMatrix& A, const IntervalMatrix& B) {
    if (A.cols != B.rows) throw DimensionMismatch("matmat");
    IntervalMatrix out(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            Interval acc = Interval::point(0.0);
            for (int k = 0; k < A.cols; ++k) acc = acc + A.at(i, k) * B.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

IntervalMatrix add(const IntervalMatrix& A, const IntervalMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw DimensionMismatch("matrix add");
    IntervalMatrix out(A.rows, A.cols);
    for (std::size_t i = 0; i < A.data.size(); ++i) out.data[i] = A.data[i] + B.data[i];
    return out;
}

Mat abs_mat(const IntervalMatrix& A) {
    Mat out(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) out(i, j) = A.at(i, j).mag();
    return out;
}

Mat rad_mat(const IntervalMatrix& A) {
    Mat out(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) out(i, j) = A.at(i, j).rad();
    return out;
}

Mat mid_mat(const IntervalMatrix& A) {
    Mat out(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) out(i, j) = A.at(i, j).mid();
    return out;
}

}  // namespace ipls
