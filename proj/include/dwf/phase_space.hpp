#pragma once

// Affine geometry of the d×d phase space over GF(d): lines a·q + b·p = c,
// their grouping into d+1 striations of parallel lines, and an exhaustive
// check of the three incidence axioms.

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "dwf/galois_field.hpp"

namespace dwf {

struct PhasePoint {
    int q = 0;  // position coordinate (field element index)
    int p = 0;  // momentum coordinate (field element index)

    auto operator<=>(const PhasePoint&) const = default;
};

/// Row-major order of the DWF table: row = p, column = q.
inline bool table_order(const PhasePoint& x, const PhasePoint& y) {
    return x.p != y.p ? x.p < y.p : x.q < y.q;
}

struct Line {
    // One coefficient triple producing this point set. Identity is the point
    // set; scalar multiples of (a, b, c) give the same line.
    int a = 0, b = 0, c = 0;
    std::vector<PhasePoint> points;  // sorted by operator<

    bool contains(const PhasePoint& x) const { return std::binary_search(points.begin(), points.end(), x); }
    bool same_points(const Line& other) const { return points == other.points; }
};

struct Striation {
    int index = 0;
    std::vector<Line> lines;
};

inline Line make_line(const GaloisField& f, int a, int b, int c) {
    Line line{a, b, c, {}};
    for (int q = 0; q < f.size(); ++q)
        for (int p = 0; p < f.size(); ++p)
            if (f.add(f.mul(a, q), f.mul(b, p)) == c) line.points.push_back({q, p});
    std::sort(line.points.begin(), line.points.end());
    return line;
}

/// Every distinct line of the plane, deduplicated by point set, in order of
/// first appearance over (a, b, c).
inline std::vector<Line> enumerate_lines(const GaloisField& f) {
    std::vector<Line> out;
    std::set<std::vector<PhasePoint>> seen;
    const int d = f.size();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (a == 0 && b == 0) continue;
            for (int c = 0; c < d; ++c) {
                Line line = make_line(f, a, b, c);
                if (seen.insert(line.points).second) out.push_back(std::move(line));
            }
        }
    return out;
}

/// d+1 striations: vertical lines (a=1, b=0) first, horizontal (a=0, b=1)
/// second, then slopes (a, 1) for a = 1..d-1 in element order. Lines inside
/// a striation are ordered by c.
inline std::vector<Striation> build_striations(const GaloisField& f) {
    const int d = f.size();
    std::vector<std::pair<int, int>> directions{{1, 0}, {0, 1}};
    for (int a = 1; a < d; ++a) directions.emplace_back(a, 1);
    std::vector<Striation> out;
    for (std::size_t s = 0; s < directions.size(); ++s) {
        Striation st{int(s), {}};
        for (int c = 0; c < d; ++c) st.lines.push_back(make_line(f, directions[s].first, directions[s].second, c));
        out.push_back(std::move(st));
    }
    return out;
}

struct GeometryReport {
    int dimension = 0;
    int striation_count = 0;
    int line_count = 0;
    bool partitions = true;          // each striation is a partition of the grid
    bool unique_joining_line = true; // (i)
    bool single_intersection = true; // (ii)
    bool unique_parallel = true;     // (iii)
    std::vector<std::string> violations;

    bool passed() const { return partitions && unique_joining_line && single_intersection && unique_parallel; }
};

inline std::string to_string(const PhasePoint& x) {
    return "(" + std::to_string(x.q) + "," + std::to_string(x.p) + ")";
}

/// Checks the incidence axioms exhaustively. Violations are collected into
/// the report rather than thrown.
inline GeometryReport verify_geometry(const std::vector<Striation>& striations, int d) {
    GeometryReport r;
    r.dimension = d;
    r.striation_count = int(striations.size());
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.violations.size() < 64) r.violations.push_back(msg);
    };

    std::vector<const Line*> all;
    std::vector<int> owner;
    for (const auto& st : striations)
        for (const auto& l : st.lines) {
            all.push_back(&l);
            owner.push_back(st.index);
        }
    r.line_count = int(all.size());

    std::vector<PhasePoint> grid;
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) grid.push_back({q, p});

    for (const auto& st : striations) {
        for (const auto& x : grid) {
            int hits = 0;
            for (const auto& l : st.lines) hits += l.contains(x);
            if (hits != 1) {
                note(r.partitions, "striation " + std::to_string(st.index) + " covers point " + to_string(x) + " " +
                                       std::to_string(hits) + " times");
            }
        }
    }

    // (i) every pair of distinct points lies on exactly one line
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            int hits = 0;
            for (const Line* l : all) hits += (l->contains(grid[i]) && l->contains(grid[j]));
            if (hits != 1) {
                note(r.unique_joining_line, "points " + to_string(grid[i]) + " and " + to_string(grid[j]) + " share " +
                                                std::to_string(hits) + " lines");
            }
        }

    // (ii) lines from different striations meet in exactly one point
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (owner[i] == owner[j]) continue;
            int common = 0;
            for (const auto& x : all[i]->points) common += all[j]->contains(x);
            if (common != 1) {
                note(r.single_intersection, "non-parallel lines in striations " + std::to_string(owner[i]) + " and " +
                                                std::to_string(owner[j]) + " share " + std::to_string(common) +
                                                " points");
            }
        }

    // (iii) through any point off a line there is exactly one parallel line
    for (std::size_t i = 0; i < all.size(); ++i)
        for (const auto& x : grid) {
            if (all[i]->contains(x)) continue;
            int hits = 0;
            for (std::size_t j = 0; j < all.size(); ++j) {
                if (j == i || owner[j] != owner[i]) continue;
                hits += all[j]->contains(x);
            }
            if (hits != 1) {
                note(r.unique_parallel, "point " + to_string(x) + " has " + std::to_string(hits) +
                                            " lines parallel to a line of striation " + std::to_string(owner[i]));
            }
        }
    return r;
}

/// The field together with its striations. Immutable after construction.
class PhaseSpace {
public:
    explicit PhaseSpace(int d) : field_(GaloisField::of_order(d)), striations_(build_striations(field_)) {}

    int dimension() const { return field_.size(); }
    const GaloisField& field() const { return field_; }
    const std::vector<Striation>& striations() const { return striations_; }

    /// Index of the line of striation s that passes through x.
    int line_through(int s, const PhasePoint& x) const {
        const auto& lines = striations_.at(s).lines;
        for (std::size_t j = 0; j < lines.size(); ++j)
            if (lines[j].contains(x)) return int(j);
        throw ValidationError("point " + to_string(x) + " lies on no line of striation " + std::to_string(s));
    }

    /// All points in DWF table order (row p, column q).
    std::vector<PhasePoint> points() const {
        std::vector<PhasePoint> out;
        for (int p = 0; p < dimension(); ++p)
            for (int q = 0; q < dimension(); ++q) out.push_back({q, p});
        return out;
    }

private:
    GaloisField field_;
    std::vector<Striation> striations_;
};

}  // namespace dwf
