#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// A ground-truth / estimate pose pair matched by timestamp.
struct PosePair {
    Pose gt;
    Pose est;
};

enum class AlignmentKind { None, Se3, Sim3 };

inline std::string to_string(AlignmentKind kind) {
    switch (kind) {
        case AlignmentKind::None: return "none";
        case AlignmentKind::Se3: return "se3";
        case AlignmentKind::Sim3: return "sim3";
    }
    throw ConfigError("invalid AlignmentKind");
}

inline AlignmentKind alignment_kind_from_string(const std::string& s) {
    if (s == "none") return AlignmentKind::None;
    if (s == "se3") return AlignmentKind::Se3;
    if (s == "sim3") return AlignmentKind::Sim3;
    throw ConfigError("unknown alignment kind '" + s + "' (expected none|se3|sim3)");
}

/// Transform mapping estimate positions onto the ground-truth frame:
/// p -> scale * rotation * p + translation.
struct Alignment {
    AlignmentKind kind = AlignmentKind::None;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double scale = 1.0;

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
        return scale * (rotation * p) + translation;
    }
};

namespace eval_detail {

/// Nearest-timestamp matching, one-to-one and order-preserving. Returns an
/// empty vector when nothing matches within max_dt.
inline std::vector<PosePair> associate_impl(const Trajectory& gt, const Trajectory& est,
                                            double max_dt) {
    std::vector<PosePair> pairs;
    std::size_t gt_begin = 0;  // first gt index still available
    for (const Pose& e : est.poses) {
        std::size_t best = gt.size();
        double best_dt = max_dt;
        for (std::size_t i = gt_begin; i < gt.size(); ++i) {
            const double dt = std::abs(gt[i].timestamp - e.timestamp);
            if (dt <= best_dt) {
                best_dt = dt;
                best = i;
            }
            if (gt[i].timestamp > e.timestamp + max_dt) break;
        }
        if (best < gt.size()) {
            pairs.push_back(PosePair{gt[best], e});
            gt_begin = best + 1;
        }
    }
    return pairs;
}

}  // namespace eval_detail

/// Matches every estimate pose to the nearest ground-truth timestamp within
/// max_dt. Throws AssociationError when no pair matches.
inline std::vector<PosePair> associate(const Trajectory& gt, const Trajectory& est,
                                       double max_dt) {
    if (gt.empty() || est.empty())
        throw AssociationError("cannot associate empty trajectories");
    auto pairs = eval_detail::associate_impl(gt, est, max_dt);
    if (pairs.empty())
        throw AssociationError("no pose pairs matched within " + std::to_string(max_dt) + " s");
    return pairs;
}

/// Closed-form least-squares registration (Umeyama) of the estimate onto the
/// ground truth. Requires at least three non-collinear pairs for Se3/Sim3.
inline Alignment align(const std::vector<PosePair>& pairs, AlignmentKind kind) {
    Alignment a;
    a.kind = kind;
    if (kind == AlignmentKind::None) return a;

    if (pairs.size() < 3)
        throw AlignmentError("rigid/similarity alignment requires at least 3 pose pairs");

    Eigen::Matrix3Xd src(3, pairs.size());
    Eigen::Matrix3Xd dst(3, pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        src.col(static_cast<Eigen::Index>(i)) = pairs[i].est.translation;
        dst.col(static_cast<Eigen::Index>(i)) = pairs[i].gt.translation;
    }

    // Collinear point sets leave the rotation under-determined.
    const Eigen::Matrix3Xd centered = src.colwise() - src.rowwise().mean();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(centered * centered.transpose());
    const Eigen::Vector3d sv = svd.singularValues();
    if (sv(1) <= 1e-12 * std::max(1.0, sv(0)))
        throw AlignmentError("degenerate (collinear) trajectory; alignment is ill-posed");

    const Eigen::Matrix4d T = Eigen::umeyama(src, dst, kind == AlignmentKind::Sim3);
    const Eigen::Matrix3d sR = T.topLeftCorner<3, 3>();
    a.scale = kind == AlignmentKind::Sim3 ? std::cbrt(sR.determinant()) : 1.0;
    a.rotation = sR / a.scale;
    a.translation = T.topRightCorner<3, 1>();
    if (!(a.scale > 0.0)) throw AlignmentError("alignment produced a non-positive scale");
    return a;
}

}  // namespace noisyrgbd
