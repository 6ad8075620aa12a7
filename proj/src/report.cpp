#include "mereo/report.hpp"

#include <sstream>

namespace mereo {

std::string render_witness(const std::vector<WitnessBinding>& witness) {
    std::ostringstream os;
    bool first = true;
    for (const auto& b : witness) {
        if (!first) os << ' ';
        first = false;
        os << b.var << '=';
        if (b.elements.size() == 1) {
            os << b.elements.front();
        } else {
            os << '[';
            for (std::size_t i = 0; i < b.elements.size(); ++i) {
                if (i) os << ' ';
                os << b.elements[i];
            }
            os << ']';
        }
    }
    return os.str();
}

std::string render_verdict(const AxiomVerdict& v) {
    std::ostringstream os;
    os << v.id << ": ";
    switch (v.status) {
        case VerdictStatus::pass: os << "pass"; break;
        case VerdictStatus::fail: os << "FAIL"; break;
        case VerdictStatus::skipped: os << "skipped"; break;
    }
    if (!v.witness.empty()) os << "  witness " << render_witness(v.witness);
    if (!v.note.empty()) os << "  (" << v.note << ')';
    return os.str();
}

std::string render_report(const AxiomReport& r) {
    std::ostringstream os;
    for (const auto& v : r.verdicts) os << render_verdict(v) << '\n';
    return os.str();
}

} // namespace mereo
