#pragma once

// Mesh files: OBJ for viewers, CSV for numbers, and the frames cache that
// lets diagnostics rerun without recomputing the frames.

#include <iosfwd>
#include <string>

#include "gcauchy/framegen.hpp"

namespace gcauchy {

// quads whose four corners are unmasked; vertex normals; masked nodes omitted
void write_obj(std::ostream& os, const SurfaceSamples& mesh);

// x,y,u,v,fx,fy,fz,nx,ny,nz,mask with u = (x - y)/2, v = (x + y)/2 and mask the
// node state (0 ok, 1 big cell, 2 irregular, 3 singular); %.17g throughout
void write_mesh_csv(std::ostream& os, const SurfaceSamples& mesh);

// "# key = value" metadata, then i,j,state,eps1,eps2,conformal,theta,len_fx,len_fy
void write_frames_cache(std::ostream& os, const SurfaceSamples& mesh);

// inverse of the two writers above; throws ConfigError on malformed files
SurfaceSamples read_mesh(const std::string& mesh_csv_path, const std::string& frames_path);

std::string format_g17(double x);

}  // namespace gcauchy
