#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxlab {

class LayoutError : public std::runtime_error {
  public:
    explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

struct SubsystemSpec {
    int input_card = 1;
    int output_card = 1;

    friend bool operator==(const SubsystemSpec&, const SubsystemSpec&) = default;
};

/// Sites (parties) holding ordered subsystems. Joint inputs and outputs are
/// ranked in mixed-radix row-major order over subsystems in layout order
/// (site 0 first, first subsystem most significant).
class SystemLayout {
  public:
    SystemLayout() = default;
    explicit SystemLayout(std::vector<std::vector<SubsystemSpec>> sites);

    const std::vector<std::vector<SubsystemSpec>>& sites() const { return sites_; }
    int site_count() const { return static_cast<int>(sites_.size()); }
    int subsystem_count() const { return static_cast<int>(flat_.size()); }

    const SubsystemSpec& subsystem(int global_index) const { return flat_.at(global_index); }
    int site_of(int global_index) const { return site_of_.at(global_index); }
    /// Global index of subsystem `k` within site `s`.
    int global_index(int site, int k) const;

    const std::vector<int>& input_cards() const { return in_cards_; }
    const std::vector<int>& output_cards() const { return out_cards_; }
    std::int64_t input_space_size() const { return in_size_; }
    std::int64_t output_space_size() const { return out_size_; }

    bool compatible_with(const SystemLayout& other) const { return sites_ == other.sites_; }

    friend bool operator==(const SystemLayout& a, const SystemLayout& b) { return a.sites_ == b.sites_; }

    /// One binary subsystem per site, two sites: the CHSH scenario.
    static SystemLayout bipartite_2x2();
    /// Single site with one subsystem (used for flag boxes).
    static SystemLayout single(SubsystemSpec spec);

  private:
    std::vector<std::vector<SubsystemSpec>> sites_;
    std::vector<SubsystemSpec> flat_;
    std::vector<int> site_of_;
    std::vector<int> in_cards_;
    std::vector<int> out_cards_;
    std::int64_t in_size_ = 1;
    std::int64_t out_size_ = 1;
};

/// Mixed-radix helpers. First digit is most significant.
std::vector<int> unrank(std::int64_t index, const std::vector<int>& cards);
std::int64_t rank_tuple(std::span<const int> tuple, const std::vector<int>& cards);

/// A cut of the global subsystem indices into two nonempty groups.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    static Bipartition of_left(std::vector<int> left, int subsystem_count);
};

/// All 2^(n-1)-1 nontrivial bipartitions of {0,...,n-1}.
std::vector<Bipartition> all_bipartitions(int subsystem_count);
/// The n cuts isolating one subsystem each.
std::vector<Bipartition> single_subsystem_cuts(int subsystem_count);

}  // namespace boxlab
