#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "random.hpp"

namespace luo {

// Fixed category convention: 1 = urban, 2 = agricultural, 3..K = immutable other uses.
constexpr std::uint8_t kUrban = 1;
constexpr std::uint8_t kAgricultural = 2;

struct CellIndex {
    int row = 0;
    int col = 0;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Up-to-4 in-bounds orthogonal neighbors, no allocation.
struct NeighborList {
    std::array<CellIndex, 4> cells{};
    int count = 0;
    const CellIndex* begin() const { return cells.data(); }
    const CellIndex* end() const { return cells.data() + count; }
};

/// Immutable land-use world: category grid, soil field, conversion budget.
/// All derived quantities (urban target, soil total, gene mapping) are computed
/// once at construction; instances are safe to share across threads read-only.
class Instance {
public:
    Instance(int rows, int cols, std::vector<std::uint8_t> categories,
             std::vector<double> soil, int budget, std::string label = {})
        : rows_(rows),
          cols_(cols),
          categories_(std::move(categories)),
          soil_(std::move(soil)),
          budget_(budget),
          label_(std::move(label)) {
        validate_and_finalize();
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    std::uint8_t category(int flat) const { return categories_[static_cast<std::size_t>(flat)]; }
    std::uint8_t category(int r, int c) const { return category(flat(r, c)); }
    const std::vector<std::uint8_t>& categories() const { return categories_; }

    double soil(int flat) const { return soil_[static_cast<std::size_t>(flat)]; }
    double soil(int r, int c) const { return soil(flat(r, c)); }
    const std::vector<double>& soil_field() const { return soil_; }

    int budget() const { return budget_; }                       // T
    int urban_target() const { return urban_target_; }           // U = initial urban + T
    int initial_urban_count() const { return initial_urban_; }
    double soil_total() const { return soil_total_; }            // A
    double max_soil() const { return max_soil_; }

    // Genotype position mapping: gene i <-> i-th initially-agricultural cell, row-major.
    int gene_count() const { return static_cast<int>(gene_cells_.size()); }
    const std::vector<int>& gene_cells() const { return gene_cells_; }
    int gene_at(int flat) const { return gene_of_[static_cast<std::size_t>(flat)]; }
    CellIndex cell_of_gene(int gene) const { return cell(gene_cells_[static_cast<std::size_t>(gene)]); }

    int flat(int r, int c) const { return r * cols_ + c; }
    int flat(CellIndex idx) const { return flat(idx.row, idx.col); }
    CellIndex cell(int flat) const { return {flat / cols_, flat % cols_}; }
    bool in_bounds(CellIndex idx) const {
        return idx.row >= 0 && idx.row < rows_ && idx.col >= 0 && idx.col < cols_;
    }

    NeighborList neighbors(CellIndex idx) const {
        if (!in_bounds(idx)) throw std::invalid_argument("neighbors: cell out of bounds");
        NeighborList out;
        if (idx.row > 0) out.cells[static_cast<std::size_t>(out.count++)] = {idx.row - 1, idx.col};
        if (idx.col > 0) out.cells[static_cast<std::size_t>(out.count++)] = {idx.row, idx.col - 1};
        if (idx.col + 1 < cols_) out.cells[static_cast<std::size_t>(out.count++)] = {idx.row, idx.col + 1};
        if (idx.row + 1 < rows_) out.cells[static_cast<std::size_t>(out.count++)] = {idx.row + 1, idx.col};
        return out;
    }

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // Content hash over dims, categories, soil bits, and budget; labels excluded.
    std::uint64_t content_hash() const {
        std::uint64_t h = fnv1a64(&rows_, sizeof(rows_));
        h = fnv1a64(&cols_, sizeof(cols_), h);
        h = fnv1a64(categories_.data(), categories_.size(), h);
        for (double v : soil_) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof(bits));
            h = fnv1a64(&bits, sizeof(bits), h);
        }
        h = fnv1a64(&budget_, sizeof(budget_), h);
        return h;
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.categories_ == b.categories_ &&
               a.soil_ == b.soil_ && a.budget_ == b.budget_;
    }

private:
    void validate_and_finalize() {
        if (rows_ <= 0 || cols_ <= 0)
            throw ValidationError("instance: rows and cols must be positive");
        const auto n_cells = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
        if (categories_.size() != n_cells)
            throw ValidationError("instance: categories grid size does not match rows*cols");
        if (soil_.size() != n_cells)
            throw ValidationError("instance: soil grid size does not match rows*cols");
        if (budget_ <= 0) throw ValidationError("instance: budget T must be positive");

        gene_of_.assign(n_cells, -1);
        int agricultural = 0;
        initial_urban_ = 0;
        soil_total_ = 0.0;
        max_soil_ = 0.0;
        for (std::size_t i = 0; i < n_cells; ++i) {
            if (categories_[i] < 1)
                throw ValidationError("instance: category codes must be in [1, K]");
            const double a = soil_[i];
            if (!(a >= 0.0) || !std::isfinite(a))
                throw ValidationError("instance: soil values must be finite and non-negative");
            if (categories_[i] == kAgricultural) {
                gene_of_[i] = agricultural++;
                gene_cells_.push_back(static_cast<int>(i));
                soil_total_ += a;
                max_soil_ = std::max(max_soil_, a);
            } else {
                if (a != 0.0)
                    throw ValidationError(
                        "instance: soil must be stored as 0 for non-agricultural cells");
                if (categories_[i] == kUrban) ++initial_urban_;
            }
        }
        if (agricultural < budget_)
            throw ValidationError("instance: agricultural cell count " +
                                  std::to_string(agricultural) + " is below budget T=" +
                                  std::to_string(budget_));
        if (!(soil_total_ > 0.0))
            throw ValidationError("instance: soil total A must be positive");
        urban_target_ = initial_urban_ + budget_;
    }

    int rows_;
    int cols_;
    std::vector<std::uint8_t> categories_;
    std::vector<double> soil_;
    int budget_;
    std::string label_;

    int urban_target_ = 0;
    int initial_urban_ = 0;
    double soil_total_ = 0.0;
    double max_soil_ = 0.0;
    std::vector<int> gene_cells_;
    std::vector<int> gene_of_;
};

namespace detail {

inline std::pair<int, int> line_col_at(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

// Instance file: single JSON document with rows, cols, categories (row-major),
// soil (row-major), budget. Derived fields are never stored.
inline Instance instance_from_json(const nlohmann::json& doc, const std::string& label = {}) {
    auto require_field = [&](const char* name) -> const nlohmann::json& {
        if (!doc.is_object() || !doc.contains(name))
            throw ParseError(std::string("instance file: missing field '") + name + "'");
        return doc.at(name);
    };
    auto int_field = [&](const char* name) {
        const auto& f = require_field(name);
        if (!f.is_number_integer())
            throw ParseError(std::string("instance file: field '") + name +
                             "' must be an integer");
        return f.get<int>();
    };
    const int rows = int_field("rows");
    const int cols = int_field("cols");
    const int budget = int_field("budget");

    const auto& cats = require_field("categories");
    if (!cats.is_array())
        throw ParseError("instance file: field 'categories' must be an array");
    std::vector<std::uint8_t> categories;
    categories.reserve(cats.size());
    for (const auto& v : cats) {
        if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 255)
            throw ParseError("instance file: field 'categories' must hold integers in [1, 255]");
        categories.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }

    const auto& soils = require_field("soil");
    if (!soils.is_array()) throw ParseError("instance file: field 'soil' must be an array");
    std::vector<double> soil;
    soil.reserve(soils.size());
    for (const auto& v : soils) {
        if (!v.is_number()) throw ParseError("instance file: field 'soil' must hold numbers");
        soil.push_back(v.get<double>());
    }

    return Instance(rows, cols, std::move(categories), std::move(soil), budget, label);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_col_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("instance file " + path + ": parse error at line " +
                         std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what());
    }
    return instance_from_json(doc, path);
}

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["rows"] = inst.rows();
    doc["cols"] = inst.cols();
    nlohmann::ordered_json cats = nlohmann::ordered_json::array();
    for (std::uint8_t c : inst.categories()) cats.push_back(static_cast<int>(c));
    doc["categories"] = std::move(cats);
    doc["soil"] = inst.soil_field();  // full-precision round trip via shortest representation
    doc["budget"] = inst.budget();
    return doc;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write instance file: " + path);
    out << instance_to_json(inst).dump() << '\n';
}

struct GeneratorParams {
    double budget_fraction = 0.15;
    int urban_regions = 2;        // contiguous urban seed blobs
    int urban_region_cells = 8;   // target cells per blob
    bool include_fixed = true;    // sprinkle immutable non-urban categories
    int fixed_patches = 3;
    int fixed_patch_cells = 6;
    int category_count = 5;       // K; fixed patches draw codes from [3, K]
    int noise_cell = 6;           // lattice spacing of the soil value noise
    int noise_octaves = 2;
};

namespace detail {

// Smooth seeded value noise on a coarse lattice, bilinearly interpolated.
inline std::vector<double> value_noise(RandomStream& rng, int rows, int cols, int cell,
                                       int octaves) {
    std::vector<double> field(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                              0.0);
    double amplitude = 1.0;
    int spacing = std::max(2, cell);
    for (int o = 0; o < octaves; ++o) {
        const int gr = rows / spacing + 2;
        const int gc = cols / spacing + 2;
        std::vector<double> lattice(static_cast<std::size_t>(gr) * static_cast<std::size_t>(gc));
        for (auto& v : lattice) v = rng.uniform_real();
        auto at = [&](int r, int c) { return lattice[static_cast<std::size_t>(r) *
                                                     static_cast<std::size_t>(gc) +
                                                     static_cast<std::size_t>(c)]; };
        auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const int r0 = r / spacing, c0 = c / spacing;
                const double tr = smooth(static_cast<double>(r % spacing) / spacing);
                const double tc = smooth(static_cast<double>(c % spacing) / spacing);
                const double top = at(r0, c0) * (1 - tc) + at(r0, c0 + 1) * tc;
                const double bot = at(r0 + 1, c0) * (1 - tc) + at(r0 + 1, c0 + 1) * tc;
                field[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                      static_cast<std::size_t>(c)] += amplitude * (top * (1 - tr) + bot * tr);
            }
        }
        amplitude *= 0.5;
        spacing = std::max(2, spacing / 2);
    }
    return field;
}

// Grow one contiguous blob of `code` over agricultural cells.
inline void grow_blob(RandomStream& rng, std::vector<std::uint8_t>& cat, int rows, int cols,
                      int target_cells, std::uint8_t code) {
    std::vector<int> starts;
    for (int i = 0; i < rows * cols; ++i)
        if (cat[static_cast<std::size_t>(i)] == kAgricultural) starts.push_back(i);
    if (starts.empty()) return;
    std::vector<int> blob{starts[rng.uniform_index(starts.size())]};
    cat[static_cast<std::size_t>(blob[0])] = code;
    while (static_cast<int>(blob.size()) < target_cells) {
        std::vector<int> frontier;
        for (int b : blob) {
            const int r = b / cols, c = b % cols;
            const int cand[4] = {r > 0 ? b - cols : -1, c > 0 ? b - 1 : -1,
                                 c + 1 < cols ? b + 1 : -1, r + 1 < rows ? b + cols : -1};
            for (int f : cand)
                if (f >= 0 && cat[static_cast<std::size_t>(f)] == kAgricultural)
                    frontier.push_back(f);
        }
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        if (frontier.empty()) break;
        const int pick = frontier[rng.uniform_index(frontier.size())];
        cat[static_cast<std::size_t>(pick)] = code;
        blob.push_back(pick);
    }
}

}  // namespace detail

// Deterministic synthetic instance: a pure function of (seed, dims, params).
// Substitutes for the unavailable real-world benchmark set.
inline Instance generate_instance(std::uint64_t seed, int rows, int cols,
                                  const GeneratorParams& params = {}) {
    if (rows < 4 || cols < 4)
        throw ValidationError("generate_instance: rows and cols must be at least 4");
    if (!(params.budget_fraction > 0.0) || !(params.budget_fraction < 1.0))
        throw ValidationError("generate_instance: budget_fraction must lie in (0, 1)");
    if (params.urban_regions < 1 || params.urban_region_cells < 1)
        throw ValidationError("generate_instance: urban region parameters must be positive");
    if (params.category_count < 3)
        throw ValidationError("generate_instance: category_count must be at least 3");

    RandomStream rng(seed);
    const auto n_cells = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    std::vector<std::uint8_t> cat(n_cells, kAgricultural);

    for (int i = 0; i < params.urban_regions; ++i)
        detail::grow_blob(rng, cat, rows, cols, params.urban_region_cells, kUrban);
    if (params.include_fixed) {
        for (int i = 0; i < params.fixed_patches; ++i) {
            const auto code = static_cast<std::uint8_t>(
                3 + rng.uniform_index(static_cast<std::size_t>(params.category_count - 2)));
            detail::grow_blob(rng, cat, rows, cols, params.fixed_patch_cells, code);
        }
    }

    auto noise = detail::value_noise(rng, rows, cols, params.noise_cell, params.noise_octaves);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (cat[i] != kAgricultural) continue;
        lo = std::min(lo, noise[i]);
        hi = std::max(hi, noise[i]);
    }
    if (!(lo <= hi)) throw ValidationError("generate_instance: no agricultural cells left");
    std::vector<double> soil(n_cells, 0.0);
    int agricultural = 0;
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (cat[i] != kAgricultural) continue;
        ++agricultural;
        soil[i] = hi > lo ? (noise[i] - lo) / (hi - lo) : 0.5;
    }

    int budget = static_cast<int>(std::lround(params.budget_fraction * agricultural));
    budget = std::clamp(budget, 1, agricultural);

    std::string label = "synthetic:seed=" + std::to_string(seed) + ":" + std::to_string(rows) +
                        "x" + std::to_string(cols);
    return Instance(rows, cols, std::move(cat), std::move(soil), budget, std::move(label));
}

}  // namespace luo
