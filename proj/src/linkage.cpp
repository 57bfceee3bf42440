#include "semlink/linkage.hpp"

#include "semlink/errors.hpp"

#include <sstream>

namespace semlink {

std::string describe(const MismatchReason& reason) {
    std::ostringstream out;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, mismatch::DomainMismatch>) {
                out << "domain mismatch: expected '" << r.expected << "', found '" << r.found
                    << "'";
            } else if constexpr (std::is_same_v<T, mismatch::InterfaceMissing>) {
                out << "interface '" << r.interface_name << "' is not provided";
            } else if constexpr (std::is_same_v<T, mismatch::SignatureMissing>) {
                out << "no provided signature matches '" << r.signature_name << "' with arity "
                    << r.arity;
            } else if constexpr (std::is_same_v<T, mismatch::ParamTypeMismatch>) {
                out << "signature '" << r.signature_name << "': parameter " << r.index
                    << " requires '" << r.required_type << "' but the provider declares '"
                    << r.provided_type << "'";
            } else if constexpr (std::is_same_v<T, mismatch::ReturnTypeMismatch>) {
                out << "signature '" << r.signature_name << "': provided return type '"
                    << r.provided_type << "' does not satisfy required '" << r.required_type
                    << "'";
            } else {
                out << "no candidates";
            }
        },
        reason);
    return out.str();
}

std::optional<MismatchReason> match_signature(const Signature& required,
                                              const Signature& provided,
                                              const TypingContext& typing) {
    if (required.name != provided.name || required.arity() != provided.arity())
        return MismatchReason(mismatch::SignatureMissing{required.name, required.arity()});
    for (std::size_t i = 0; i < required.params.size(); ++i) {
        // The requirer passes required.params[i]; the provider must accept
        // at least that (contravariant parameters).
        if (!typing.is_subtype(required.params[i], provided.params[i]))
            return MismatchReason(mismatch::ParamTypeMismatch{
                required.name, i, required.params[i], provided.params[i]});
    }
    // Covariant return: the provider's result must be usable where the
    // requirer expects its own return type.
    if (!typing.is_subtype(provided.return_type, required.return_type))
        return MismatchReason(mismatch::ReturnTypeMismatch{required.name, required.return_type,
                                                           provided.return_type});
    return std::nullopt;
}

std::vector<MismatchReason> match_port(const Port& required, const ComponentView& provided_view,
                                       const TypingContext& typing) {
    std::vector<MismatchReason> reasons;
    const Port* provided = provided_view.find_port(PortDirection::Provided,
                                                   required.interface_name);
    if (!provided) {
        reasons.push_back(mismatch::InterfaceMissing{required.interface_name});
        return reasons;
    }

    for (const Signature& want : required.signatures) {
        bool matched = false;
        std::optional<MismatchReason> closest;
        for (const Signature& have : provided->signatures) {
            if (have.name != want.name || have.arity() != want.arity())
                continue;
            std::optional<MismatchReason> failure = match_signature(want, have, typing);
            if (!failure) {
                matched = true;
                break;
            }
            if (!closest)
                closest = std::move(failure); // first same-name same-arity overload
        }
        if (matched)
            continue;
        if (closest)
            reasons.push_back(std::move(*closest));
        else
            reasons.push_back(mismatch::SignatureMissing{want.name, want.arity()});
    }
    return reasons;
}

MatchReport check_pair(const ComponentView& initial_view, const ComponentView& target_view,
                       const std::string& port) {
    const Nmc& initial = *initial_view.nmc;
    const Nmc& target = *target_view.nmc;

    MatchReport report;
    report.initial_id = initial.id;
    report.target_id = target.id;
    report.initial_ordinal = initial_view.ordinal;
    report.target_ordinal = target_view.ordinal;
    report.port = port;

    const Port* required = initial_view.find_port(PortDirection::Required, port);
    if (!required)
        throw Error(ErrorKind::UnknownPort, "'" + port + "' is not a required port of '" +
                                                initial.id + "' at revision " +
                                                std::to_string(initial_view.ordinal));

    // Components of another domain are recognized but not considered: the
    // report carries only the domain reason, no structural findings.
    if (initial.domain != target.domain) {
        report.reasons.push_back(mismatch::DomainMismatch{initial.domain, target.domain});
        report.ok = false;
        return report;
    }

    TypingContext typing = TypingContext::merged(initial.typing, target.typing);
    report.reasons = match_port(*required, target_view, typing);
    report.ok = report.reasons.empty();
    return report;
}

Binding bind(const MatchReport& report) {
    if (!report.ok)
        throw Error(ErrorKind::UnprovenBinding,
                    "cannot bind '" + report.initial_id + "' to '" + report.target_id +
                        "': the pair is not proved compatible");
    return Binding{report.initial_id, report.target_id, report.port, report.initial_ordinal,
                   report.target_ordinal};
}

} // namespace semlink
