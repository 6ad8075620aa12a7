#ifndef MEREO_CONTACT_HPP
#define MEREO_CONTACT_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mereo/bits.hpp"
#include "mereo/granular_space.hpp"
#include "mereo/report.hpp"
#include "mereo/universe.hpp"

namespace mereo {

// The five granule-mediated contact relations. Writing x ~ y for "x is part
// of y" and l/u for the approximation operators:
//   type-a: some granule g has nonzero parts of a and of b inside it
//   type-o: some granule is part of both a and b
//   type-1: some part f of a has upper approximation order-equal to b's
//   type-2: some granule joins l(a) to u(b) and some granule u(a) to l(b)
//   type-3: some granule is part of both upper approximations
enum class ContactKind { type_a, type_o, type_1, type_2, type_3 };

// "Re_a", "Re_o", "Re_1", "Re_2", "Re_3".
const char* to_string(ContactKind k);
// Accepts the single-character codes a|o|1|2|3.
std::optional<ContactKind> contact_kind_from_code(std::string_view code);

// Single-pair evaluation of the defining formula. Existential witnesses
// skip the designated bottom except type-1's f, which ranges over the whole
// carrier (its reflexive witness is f = x).
bool rough_contact(const GranularSpaceModel& m, ContactKind kind, int a, int b);

// A fully materialized binary relation over a model's carrier, either one
// of the contact kinds or a custom table.
class NamedRelation {
public:
    // Computes the full pair table. Workers > 1 split the row range.
    static NamedRelation materialize(const GranularSpaceModel& m, ContactKind kind,
                                     int workers = 1);
    static NamedRelation custom(std::vector<std::string> names, BitMatrix table,
                                std::string label);

    int size() const { return static_cast<int>(table_.size()); }
    const std::string& label() const { return label_; }
    std::optional<ContactKind> kind() const { return kind_; }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

    bool contains(int a, int b) const {
        return table_.test(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    const BitMatrix& table() const { return table_; }
    bool symmetric() const { return table_.symmetric(); }

private:
    std::vector<std::string> names_;
    BitMatrix table_;
    std::string label_;
    std::optional<ContactKind> kind_;
};

// Verdicts for the seven contact axioms followed by the four relation
// properties. C1 and C5 need a designated bottom and C4/C6/C7 a total join;
// they are skipped with a reason otherwise.
AxiomReport contact_axiom_report(const GranularSpaceModel& m, const NamedRelation& r);

enum class Tri { yes, no, undetermined };

const char* to_string(Tri t);

// Contact = C1..C5; precontact = C1, C6, C7. Skipped axioms leave the
// corresponding label undetermined.
struct ContactClassification {
    Tri contact = Tri::undetermined;
    Tri precontact = Tri::undetermined;
    std::vector<std::string> failed;  // failed axiom ids
    std::vector<std::string> skipped; // skipped axiom ids
};

ContactClassification classify_contact(const AxiomReport& report);

// The spatial relations derived from a symmetric contact relation:
// disconnection, external connection, tangential proper parthood.
struct DerivedRelations {
    BitMatrix disconnected;            // not in contact
    BitMatrix externally_connected;    // contact without overlap
    BitMatrix tangential_proper_part;  // proper part sharing an external contact
};

DerivedRelations derived_relations(const GranularSpaceModel& m, const NamedRelation& r);

// Total assignment of equal-length feature vectors to universe elements.
class ProbeAssignment {
public:
    ProbeAssignment(std::shared_ptr<const Universe> u,
                    std::vector<std::vector<double>> features);

    const std::shared_ptr<const Universe>& universe() const { return universe_; }
    int dimension() const { return dimension_; }
    const std::vector<double>& feature(int i) const {
        return features_.at(static_cast<std::size_t>(i));
    }

    friend bool operator==(const ProbeAssignment& a, const ProbeAssignment& b) {
        return a.universe_->names() == b.universe_->names() && a.features_ == b.features_;
    }

private:
    std::shared_ptr<const Universe> universe_;
    std::vector<std::vector<double>> features_;
    int dimension_ = 0;
};

// Members of A union B whose description occurs in both A's and B's images.
SubsetValue descriptive_intersection(const ProbeAssignment& p, const SubsetValue& a,
                                     const SubsetValue& b);
// Nearness is a nonempty descriptive intersection.
bool descriptively_near(const ProbeAssignment& p, const SubsetValue& a, const SubsetValue& b);

} // namespace mereo

#endif
