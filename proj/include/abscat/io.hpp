#pragma once
// CSV and JSON artifacts. Doubles are written in shortest round-trip form, so
// every file re-loads bit-exactly. Loaders throw SchemaError on bad input.

#include "abscat/abwave.hpp"
#include "abscat/gaugefield.hpp"
#include "abscat/inverse.hpp"
#include "abscat/smatrix.hpp"
#include "abscat/xray.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace abscat::io {

std::string format_double(double v);
double parse_double(std::string_view s);

//! x1,x2,re,im
void write_wave_csv(std::ostream &out, std::span<const abwave::WaveSample> samples);

//! n,delta_re,delta_im,alpha_hint then j,k,re,im for all n^2 entries.
void write_kernel_csv(std::ostream &out, const smatrix::KernelGrid &g);
smatrix::KernelGrid read_kernel_csv(std::istream &in);

//! n_p,n_phi,p_max then i,j,value.
void write_sinogram_csv(std::ostream &out, const xray::Sinogram &s);
xray::Sinogram read_sinogram_csv(std::istream &in);
//! n_p,n_phi,p_max then i,j,re,im of e^{i value}.
void write_phase_sinogram_csv(std::ostream &out, const xray::Sinogram &raw);

//! x1,x2,value
void write_reconstruction_csv(std::ostream &out, const xray::Reconstruction &r);

//! {"alpha","bumps","gradL","V","R0"}; bumps are {"center":[x,y],"strength","width"}.
std::string potential_to_json(const gaugefield::VectorPotential &pot);
gaugefield::VectorPotential potential_from_json(std::string_view text);

//! {"alpha","ceil_alpha","sin_pi_alpha","residual","witness"}
std::string verdict_to_json(const inverse::Verdict &v);

std::string read_file(const std::string &path);

} // namespace abscat::io
