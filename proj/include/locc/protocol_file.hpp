// Copyright 2026 The locc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "locc/protocol.hpp"

namespace locc {

/// Parses a numeric field: decimal, exact fraction "p/q" (one rounding), or a
/// multiple of pi such as "pi", "pi/4", "3pi/4", "-pi/2".
inline std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto decimal = [](std::string_view t) -> std::optional<double> {
        if (t.empty()) return std::nullopt;
        double v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
        return v;
    };
    const auto integer = [](std::string_view t) -> std::optional<long long> {
        if (t.empty()) return std::nullopt;
        long long v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
        return v;
    };

    std::string_view num = text, den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (den.empty()) return std::nullopt;
    }

    double value = 0;
    if (auto pi = num.find("pi"); pi != std::string_view::npos) {
        if (pi + 2 != num.size()) return std::nullopt;
        double coeff = 1;
        if (pi > 0) {
            auto c = decimal(num.substr(0, pi));
            if (!c) return std::nullopt;
            coeff = *c;
        }
        value = coeff * std::numbers::pi;
        if (!den.empty()) {
            auto d = decimal(den);
            if (!d || *d == 0) return std::nullopt;
            value /= *d;
        }
    } else if (!den.empty()) {
        auto n = integer(num), d = integer(den);
        if (n && d) {
            if (*d == 0) return std::nullopt;
            value = static_cast<double>(*n) / static_cast<double>(*d);
        } else {
            auto nd = decimal(num), dd = decimal(den);
            if (!nd || !dd || *dd == 0) return std::nullopt;
            value = *nd / *dd;
        }
    } else {
        auto v = decimal(num);
        if (!v) return std::nullopt;
        value = *v;
    }
    return negative ? -value : value;
}

/// A protocol document: the starting state, the steps, and (when present) the target.
struct ProtocolFile {
    PureState initial;
    Protocol protocol;
    bool has_target = false;
};

namespace detail {

struct Token {
    std::string text;
    int column;
};

class ProtocolFileParser {
public:
    explicit ProtocolFileParser(std::string_view text) : text_(text) {}

    ProtocolFile parse() {
        std::istringstream in{std::string(text_)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            tokens_ = tokenize(raw);
            pos_ = 0;
            if (tokens_.empty()) continue;
            const std::string head = take("directive").text;
            if (head == "state") {
                if (state_) fail_here(ErrorKind::ParseError, "state declared twice; use attach");
                state_ = state_spec(next_label_, true);
            } else if (head == "attach") {
                if (!state_) fail_here(ErrorKind::ParseError, "attach before state");
                PureState extra = state_spec(next_label_, true);
                state_ = guarded([&] { return tensor(*state_, extra); });
            } else if (head == "step") {
                if (!state_) fail_here(ErrorKind::ParseError, "step before state");
                protocol_.steps.push_back(step());
            } else if (head == "target") {
                if (has_target_) fail_here(ErrorKind::ParseError, "target declared twice");
                protocol_.target = target();
                has_target_ = true;
            } else if (head == "name") {
                protocol_.name = take("protocol name").text;
            } else {
                fail_at(tokens_[0], ErrorKind::ParseError, "unknown directive '" + head + "'");
            }
            if (pos_ < tokens_.size()) fail_at(tokens_[pos_], ErrorKind::ParseError, "unexpected '" + tokens_[pos_].text + "'");
        }
        if (!state_) throw ParseError(ErrorKind::ParseError, std::max(line_, 1), 1, "missing state");
        if (protocol_.name.empty()) protocol_.name = "file";
        if (has_target_) {
            try {
                detail::validate_protocol(state_->reg(), protocol_);
            } catch (const Error& e) {
                throw ParseError(ErrorKind::SemanticError, line_, 1, e.what());
            }
        }
        return ProtocolFile{*state_, protocol_, has_target_};
    }

private:
    static std::vector<Token> tokenize(const std::string& raw) {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] == '#') break;
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            const std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) && raw[i] != '#') ++i;
            out.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
        }
        return out;
    }

    [[noreturn]] void fail_at(const Token& t, ErrorKind kind, const std::string& msg) const {
        throw ParseError(kind, line_, t.column, msg);
    }

    [[noreturn]] void fail_here(ErrorKind kind, const std::string& msg) const {
        const int col = pos_ < tokens_.size() ? tokens_[pos_].column
                                              : (tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size()));
        throw ParseError(kind, line_, col, msg);
    }

    const Token& take(const std::string& what) {
        if (pos_ >= tokens_.size()) fail_here(ErrorKind::ParseError, "expected " + what);
        return tokens_[pos_++];
    }

    bool peek_is(std::string_view word) const { return pos_ < tokens_.size() && tokens_[pos_].text == word; }

    void expect(std::string_view word) {
        const Token& t = take("'" + std::string(word) + "'");
        if (t.text != word) fail_at(t, ErrorKind::ParseError, "expected '" + std::string(word) + "', got '" + t.text + "'");
    }

    double number(const std::string& what) {
        const Token& t = take(what);
        auto v = parse_number(t.text);
        if (!v) fail_at(t, ErrorKind::ParseError, "bad number '" + t.text + "' for " + what);
        return *v;
    }

    SiteLabel site_label(const std::string& what) {
        const Token& t = take(what);
        int v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) fail_at(t, ErrorKind::ParseError, "bad site label '" + t.text + "'");
        return v;
    }

    template <typename F>
    auto guarded(F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            const int col = tokens_.empty() ? 1 : tokens_.front().column;
            throw ParseError(ErrorKind::SemanticError, line_, col, e.what());
        }
    }

    /// <kind> <params...> parties P... [sites n...]
    PureState state_spec(SiteLabel& next_label, bool advance) {
        const Token& kind_tok = take("state kind");
        const std::string kind = kind_tok.text;
        std::vector<double> params;
        std::string bits;
        std::size_t arity = 0;
        if (kind == "w") {
            for (const char* n : {"a", "b", "c", "d"}) params.push_back(number(n));
            arity = 3;
        } else if (kind == "ghz") {
            arity = 3;
        } else if (kind == "epr") {
            arity = 2;
        } else if (kind == "ghzclass") {
            for (const char* n : {"delta", "phi", "alpha", "beta", "gamma"}) params.push_back(number(n));
            arity = 3;
        } else if (kind == "pair") {
            for (const char* n : {"alpha", "beta"}) params.push_back(number(n));
            arity = 2;
        } else if (kind == "basis") {
            bits = take("bit string").text;
            arity = bits.size();
        } else {
            fail_at(kind_tok, ErrorKind::ParseError, "unknown state kind '" + kind + "'");
        }

        expect("parties");
        std::vector<Party> parties;
        while (pos_ < tokens_.size() && tokens_[pos_].text != "sites" && parties.size() < arity) {
            parties.push_back(tokens_[pos_++].text);
        }
        if (parties.size() != arity) {
            fail_here(ErrorKind::SemanticError, kind + " needs " + std::to_string(arity) + " parties");
        }
        std::vector<Site> sites;
        if (peek_is("sites")) {
            ++pos_;
            for (std::size_t i = 0; i < arity; ++i) sites.push_back({site_label("site label"), parties[i]});
        } else {
            for (std::size_t i = 0; i < arity; ++i) sites.push_back({next_label + static_cast<SiteLabel>(i), parties[i]});
        }
        if (advance) {
            for (const auto& s : sites) next_label = std::max(next_label, s.label + 1);
        }

        return guarded([&]() -> PureState {
            Register reg(sites);
            if (kind == "w") return w_family(params[0], params[1], params[2], params[3], reg);
            if (kind == "ghz") return ghz(reg);
            if (kind == "epr") return epr(reg);
            if (kind == "ghzclass") return ghz_class({params[0], params[1], params[2], params[3], params[4]}, reg);
            if (kind == "pair") return schmidt_pair(params[0], params[1], reg);
            return computational(reg, bits);
        });
    }

    std::optional<Condition> condition() {
        if (!peek_is("if")) return std::nullopt;
        ++pos_;
        const Token& t = take("condition site=outcome");
        const auto eq = t.text.find('=');
        int site = 0, outcome = 0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        if (eq == std::string::npos || std::from_chars(b, b + eq, site).ec != std::errc() ||
            std::from_chars(b + eq + 1, e, outcome).ec != std::errc() || (outcome != 0 && outcome != 1)) {
            fail_at(t, ErrorKind::ParseError, "condition must look like <site>=<0|1>");
        }
        return Condition{site, outcome};
    }

    Party known_party() {
        const Token& t = take("party");
        if (!state_->reg().has_party(t.text) && !declared_later(t.text)) {
            fail_at(t, ErrorKind::SemanticError, "unknown party '" + t.text + "'");
        }
        return t.text;
    }

    bool declared_later(const Party& p) const {
        for (const auto& s : protocol_.steps) {
            if (const auto* pr = std::get_if<PrepareStep>(&s); pr && pr->party == p) return true;
        }
        return false;
    }

    Step step() {
        const Token& op = take("step kind");
        if (op.text == "measure") {
            expect("party");
            MeasureStep m;
            m.party = known_party();
            expect("site");
            m.site = site_label("site");
            expect("basis");
            const Token& b = take("basis");
            if (b.text == "Z") {
                m.basis = MeasurementBasis::z();
            } else if (b.text == "X") {
                m.basis = MeasurementBasis::x();
            } else {
                fail_at(b, ErrorKind::ParseError, "basis must be Z or X");
            }
            if (peek_is("accept")) {
                ++pos_;
                const Token& a = take("accepted outcome");
                if (a.text == "0" || a.text == "1") {
                    m.accept = {a.text[0] - '0'};
                } else if (a.text != "*") {
                    fail_at(a, ErrorKind::ParseError, "accept takes 0, 1 or *");
                }
            }
            check_owner(m.party, m.site);
            return m;
        }
        if (op.text == "cnot") {
            expect("party");
            UnitaryStep u;
            u.party = known_party();
            expect("control");
            const SiteLabel c = site_label("control site");
            expect("target");
            const SiteLabel t = site_label("target site");
            u.sites = {c, t};
            u.matrix = gates::cnot();
            u.name = "CNOT";
            u.when = condition();
            check_owner(u.party, c);
            check_owner(u.party, t);
            return u;
        }
        if (op.text == "x" || op.text == "y" || op.text == "z" || op.text == "h") {
            expect("party");
            UnitaryStep u;
            u.party = known_party();
            expect("site");
            u.sites = {site_label("site")};
            u.matrix = op.text == "x" ? gates::x() : op.text == "y" ? gates::y() : op.text == "z" ? gates::z() : gates::h();
            u.name = std::string(1, static_cast<char>(std::toupper(op.text[0])));
            u.when = condition();
            check_owner(u.party, u.sites[0]);
            return u;
        }
        if (op.text == "teleport") {
            expect("source");
            TeleportStep t;
            t.source = site_label("source site");
            expect("via");
            t.near = site_label("near EPR site");
            t.far = site_label("far EPR site");
            if (peek_is("verbose")) {
                ++pos_;
                t.verbose = true;
            }
            return t;
        }
        if (op.text == "prepare") {
            expect("party");
            const Token& pt = take("party");
            PureState local = state_spec(next_label_, true);
            for (const auto& s : local.reg().sites()) {
                if (s.party != pt.text) fail_at(pt, ErrorKind::SemanticError, "prepared sites must all belong to " + pt.text);
            }
            return PrepareStep{pt.text, local};
        }
        if (op.text == "accept" || op.text == "abort") {
            std::vector<Condition> cs;
            while (peek_is("if")) cs.push_back(*condition());
            if (cs.empty()) fail_here(ErrorKind::ParseError, "expected 'if <site>=<outcome>'");
            if (op.text == "accept") return AcceptStep{cs};
            return AbortStep{cs};
        }
        fail_at(op, ErrorKind::ParseError, "unknown step '" + op.text + "'");
    }

    /// Ownership against the sites known so far (initial register plus prepared ones).
    void check_owner(const Party& party, SiteLabel site) {
        const Token& where = tokens_[pos_ - 1];
        std::optional<Party> owner;
        if (state_->reg().contains(site)) owner = state_->reg().party_of(site);
        for (const auto& s : protocol_.steps) {
            if (const auto* pr = std::get_if<PrepareStep>(&s); pr && pr->state.reg().contains(site)) owner = pr->party;
        }
        if (!owner) fail_at(where, ErrorKind::SemanticError, "unknown site " + std::to_string(site));
        if (*owner != party) {
            fail_at(where, ErrorKind::SemanticError, "site " + std::to_string(site) + " is owned by " + *owner + ", not " + party);
        }
    }

    Target target() {
        const Token& mode = take("target mode");
        if (mode.text == "ghz-lu" || mode.text == "epr-lu") {
            expect("sites");
            const std::size_t n = mode.text == "ghz-lu" ? 3 : 2;
            std::vector<SiteLabel> s;
            for (std::size_t i = 0; i < n; ++i) s.push_back(site_label("site"));
            return n == 3 ? Target::lu_ghz(s[0], s[1], s[2]) : Target::lu_epr(s[0], s[1]);
        }
        if (mode.text == "exact") {
            SiteLabel scratch = 1;
            return Target::exact(state_spec(scratch, false));
        }
        fail_at(mode, ErrorKind::ParseError, "target mode must be ghz-lu, epr-lu or exact");
    }

    std::string_view text_;
    int line_ = 0;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::optional<PureState> state_;
    Protocol protocol_;
    bool has_target_ = false;
    SiteLabel next_label_ = 1;
};

}  // namespace detail

/// Line-oriented protocol document, one directive per line, '#' comments:
///
///   state w <a> <b> <c> <d> parties A B C [sites 1 2 3]
///   state ghz | epr | ghzclass <d> <phi> <a> <b> <c> | pair <alpha> <beta> | basis <bits> ...
///   attach <state...>
///   step measure party <P> site <n> basis <Z|X> [accept <0|1|*>]
///   step cnot party <P> control <n> target <n> [if <site>=<outcome>]
///   step x|y|z|h party <P> site <n> [if <site>=<outcome>]
///   step teleport source <n> via <near> <far> [verbose]
///   step prepare party <P> <state...>
///   step accept|abort if <site>=<outcome> ...
///   target ghz-lu sites <n> <n> <n> | epr-lu sites <n> <n> | exact <state...>
///
/// Sites are numbered 1, 2, ... in declaration order unless given explicitly.
inline ProtocolFile parse_protocol_file(std::string_view text) { return detail::ProtocolFileParser(text).parse(); }

}  // namespace locc
