#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "g2flow/forms.hpp"
#include "g2flow/profile.hpp"

namespace g2flow {

// Profile text format:
//   line 1: "N <int>", then N lines of decimal floats (samples at k/N); or
//   line 1: "FOURIER", then lines "k a_k b_k" for a_k cos(2 pi k x) + b_k sin(2 pi k x),
// in which case the grid size must be supplied by the caller.
Profile read_profile(std::istream& in, std::uint32_t fourier_n);
Profile read_profile_file(const std::string& path, std::uint32_t fourier_n);
void write_profile(std::ostream& out, const Profile& p);
void write_profile_file(const std::string& path, const Profile& p);

// MultiForm dump: one line per term "AXES <names> COEFF <value|profile:pk>";
// non-constant coefficients are emitted afterwards as "PROFILE pk" blocks in
// the standard profile format.
void dump_form(std::ostream& out, const MultiForm& form);

// minimal CSV writer: header + rows
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// FNV-1a hash of a byte string (used for run-manifest input hashes)
std::uint64_t fnv1a(const std::string& data);

}  // namespace g2flow
