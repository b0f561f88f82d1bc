/** Reader for the placement-file JSON format. */

export interface ShellParams {
  planes: number;
  sats_per_plane: number;
  altitude_km: number;
  inclination_deg: number;
}

export interface PlacementDoc {
  shell: ShellParams;
  slo: string;
  resourceCount: number;
}

export class PlacementFormatError extends Error {}

export function parsePlacementFile(text: string, source = "<placement>"): PlacementDoc {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new PlacementFormatError(`${source}: not valid JSON: ${(err as Error).message}`);
  }
  const record = doc as Record<string, unknown>;
  if (record["format"] !== "leoplace-placement") {
    throw new PlacementFormatError(`${source}: not a leoplace placement file`);
  }
  const shell = record["shell"] as Record<string, unknown> | undefined;
  const resources = record["resources"];
  const slo = record["slo"];
  if (
    shell == null ||
    typeof slo !== "string" ||
    !Array.isArray(resources) ||
    typeof shell["planes"] !== "number" ||
    typeof shell["sats_per_plane"] !== "number" ||
    typeof shell["altitude_km"] !== "number" ||
    typeof shell["inclination_deg"] !== "number"
  ) {
    throw new PlacementFormatError(`${source}: missing shell/slo/resources fields`);
  }
  return {
    shell: {
      planes: shell["planes"],
      sats_per_plane: shell["sats_per_plane"],
      altitude_km: shell["altitude_km"],
      inclination_deg: shell["inclination_deg"],
    },
    slo,
    resourceCount: resources.length,
  };
}
