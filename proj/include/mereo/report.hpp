#ifndef MEREO_REPORT_HPP
#define MEREO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace mereo {

// One named variable of a witness, bound to one or more element names.
// Set-valued bindings (the B of a sum/fusion claim) carry several names.
struct WitnessBinding {
    std::string var;
    std::vector<std::string> elements;
};

enum class VerdictStatus { pass, fail, skipped };

struct AxiomVerdict {
    std::string id;
    VerdictStatus status = VerdictStatus::pass;
    std::vector<WitnessBinding> witness; // populated on failure
    std::string note;                    // reason when skipped, detail otherwise

    bool passed() const { return status == VerdictStatus::pass; }
    bool failed() const { return status == VerdictStatus::fail; }
};

struct AxiomReport {
    std::vector<AxiomVerdict> verdicts;

    const AxiomVerdict* find(const std::string& id) const {
        for (const auto& v : verdicts)
            if (v.id == id) return &v;
        return nullptr;
    }

    bool all_passed() const {
        for (const auto& v : verdicts)
            if (v.failed()) return false;
        return true;
    }

    std::vector<std::string> failed_ids() const {
        std::vector<std::string> out;
        for (const auto& v : verdicts)
            if (v.failed()) out.push_back(v.id);
        return out;
    }
};

// "a={1,2} b={3}" rendering shared by text reports and error messages.
std::string render_witness(const std::vector<WitnessBinding>& witness);
std::string render_verdict(const AxiomVerdict& v);
std::string render_report(const AxiomReport& r);

} // namespace mereo

#endif
