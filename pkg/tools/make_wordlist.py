#!/usr/bin/env python3
"""Build src/tokenrelay/data/wordlist.txt from the curated categories below.

Run once; the generated file is committed. Entries must stay lowercase a-z,
3-9 chars, unique, and the final count must be >= 2048.
"""
import re
import sys
from pathlib import Path

CATEGORIES = {
    "animals": """
    aardvark alpaca anteater antelope badger bat bear beaver bison boar bobcat
    buffalo camel caribou cat cheetah chipmunk cougar cow coyote deer dingo
    dog donkey elephant elk ermine ferret fox gazelle gerbil gibbon giraffe
    goat gopher gorilla hamster hare hedgehog hippo horse hyena ibex impala
    jackal jaguar kangaroo koala lemming lemur leopard lion llama lynx marmot
    marten meerkat mink mole mongoose moose mouse mule muskrat ocelot opossum
    otter panda panther pig platypus polecat pony porpoise possum puma rabbit
    raccoon ram rat reindeer rhino seal sheep shrew skunk sloth squirrel stag
    stoat tapir tiger vole walrus wapiti weasel wolf wombat yak zebra colt
    calf cub doe fawn foal kitten lamb piglet puppy mare stallion ox bull
    """,
    "birds": """
    albatross bittern blackbird bluejay booby bunting buzzard canary cardinal
    chickadee condor cormorant crane crow cuckoo curlew dove duck eagle egret
    falcon finch flamingo gannet goose grackle grebe grouse gull hawk heron
    hoopoe ibis jackdaw kestrel killdeer kingbird kite kiwi lark loon magpie
    mallard martin merlin nuthatch oriole osprey ostrich owl parakeet parrot
    partridge peacock pelican penguin petrel pheasant pigeon pipit plover
    puffin quail raven robin rooster sandpiper seagull shrike siskin snipe
    sparrow starling stork swallow swan swift tanager tern thrush toucan
    turkey vireo vulture warbler waxwing wren
    """,
    "sea": """
    abalone anchovy barnacle bass carp catfish clam cod conch coral crab
    cuttle dolphin eel flounder grouper guppy haddock halibut herring jelly
    krill limpet lobster mackerel manatee marlin minnow mollusk mussel narwhal
    octopus orca oyster perch pike plankton pollock prawn ray salmon sardine
    scallop shark shrimp smelt snail snapper sole sponge sprat squid starfish
    sturgeon sunfish tetra tilapia trout tuna turbot turtle urchin whale
    whelk
    """,
    "insects": """
    ant aphid bee beetle bumblebee butterfly caterpillar cicada cricket
    damselfly dragonfly earwig firefly flea gnat grub hornet katydid ladybug
    larva locust mantis mayfly midge millipede mosquito moth silkworm
    spider termite wasp weevil
    """,
    "plants": """
    acacia acorn alder ash aspen azalea bamboo baobab basil bean beech birch
    bluebell bramble briar bud bush cactus camellia cattail cedar chestnut
    clover crocus cypress daffodil dahlia daisy dandelion dogwood elm fennel
    fern ficus fir flax foxglove fuchsia gardenia geranium ginkgo gourd grass
    hawthorn hazel heather hemlock hibiscus holly honeydew hyacinth iris ivy
    jasmine juniper kelp kudzu larch laurel lavender leaf lilac lily linden
    lotus lupine magnolia mahogany mangrove maple marigold mimosa mistletoe
    moss mulberry myrtle nettle oak oleander orchid palm pansy peony petal
    petunia pine pollen poplar poppy primrose redwood reed root rose rosemary
    sage sapling seed sequoia shrub snowdrop spruce stem sunflower sycamore
    teak thistle thorn thyme trunk tulip verbena vine violet willow wisteria
    yew zinnia
    """,
    "food": """
    almond apple apricot avocado bagel banana barley basmati batter berry
    biscuit blueberry bread brownie burrito butter cabbage cake candy caramel
    carrot cashew celery cereal cheddar cheese cherry chili chive chocolate
    chowder chutney cinnamon citron cocoa coconut coffee cookie corn cracker
    cranberry cream crepe crouton cumin cupcake currant curry custard date
    donut dough dumpling eggplant endive fig flour fritter fudge garlic
    ginger gouda granola grape grapevine gravy guava gumbo hazelnut honey
    hummus icing jam kale kebab ketchup kiwifruit leek lemon lentil lettuce
    lime mango maize melon milk millet mint muffin mushroom mustard nectar
    noodle nougat nutmeg oat okra olive omelet onion orange oregano pancake
    papaya paprika parsley parsnip pasta pastry peach peanut pear pecan
    pepper pickle pie pistachio pizza plum pomelo popcorn porridge potato
    pretzel prune pudding pumpkin quiche quinoa radish raisin raspberry
    ravioli rhubarb rice risotto rye saffron salad salsa sandwich sauce
    scone sesame shallot sherbet sorbet soup spinach sprout squash stew
    strudel sugar sushi syrup taco taffy tangerine tapioca tart toast toffee
    tomato tortilla truffle turmeric turnip vanilla waffle walnut wasabi
    watercress wheat yam yeast yogurt zucchini
    """,
    "colors": """
    amber aqua auburn azure beige black blue bronze brown burgundy carmine
    cerulean charcoal cobalt copper coral cream crimson cyan ebony emerald
    gold golden gray green indigo ivory jade khaki lime
    magenta maroon mauve navy ochre olive orange pastel pink plum purple red
    rosy ruby russet rust saffron sapphire scarlet sepia sienna silver slate
    tan teal topaz turquoise umber violet white yellow
    """,
    "weather_nature": """
    aurora avalanche bay bayou beach blizzard bluff bog boulder breeze brook
    butte caldera canyon cape cavern chasm cliff cloud coast comet cove
    crater creek crest current cyclone dale dawn delta desert dew drizzle
    drought dune dusk earth east eclipse equinox estuary fjord flood flurry
    foam fog forest fossil frost gale geyser glacier glade glen gorge grotto
    gulch gulf gully hail harbor haze headland hill horizon hurricane iceberg
    inlet island isle isthmus jungle lagoon lake landslide ledge lightning
    marsh meadow mesa mist monsoon moon moraine morning mountain north oasis
    ocean outcrop ozone peak pebble peninsula plain plateau pond prairie
    rain rainbow rapids ravine reef ridge river rivulet rock sand savanna
    sea shore sky sleet slope snow solstice south spring squall star steam
    storm strait stream summit sunrise sunset swamp taiga terrain thaw
    thicket thunder tide tornado tremor trench tributary tsunami tundra
    twilight typhoon valley vapor volcano waterfall wave west wetland wind
    winter woodland zephyr
    """,
    "space": """
    antenna apogee asteroid astronaut booster capsule cosmos cupola docking
    galaxy gravity launch lunar meteor meteorite module nebula nova orbit
    orbiter payload perigee planet probe pulsar quasar rocket rover
    satellite saturn spacesuit stardust thruster zenith
    """,
    "materials": """
    acrylic agate alloy aluminum amethyst basalt beryl brass brick bronze
    canvas carbon cement ceramic chalk chrome citrine clay cobblestone
    concrete cotton crystal denim diamond enamel fabric felt fiberglass
    flint foil garnet gauze gem glass granite graphite gravel gypsum iron
    jasper lacquer latex leather limestone linen magnet marble mercury mica
    mineral nickel nylon obsidian onyx opal paper pearl pewter plaster
    plastic platinum plywood polymer porcelain pumice quartz quartzite
    resin rubber sandstone sapwood satin shale silica silicon silk slate
    sodium solder steel stone stucco suede sulfur tin titanium topsoil
    tungsten tweed twine velvet veneer vinyl wax wool zinc zircon
    """,
    "objects": """
    abacus anchor anvil apron awl axe backpack badge bag balloon banner
    barrel basin basket beacon beaker bell bellows belt bench binder
    blanket bobbin bolt bookcase bottle bowl box bracket broom brush bucket
    buckle bugle bulb bundle burner button cabinet cable caliper camera can
    candle canister canoe canteen cap carafe card carton cart case cask
    casket chain chair chalice chandler chest chime chisel clamp clasp
    clock compass cone cork corkscrew cot couch cradle crate crayon crowbar
    crucible cup cupboard curtain cushion dagger decal desk dial dice
    dipper dish divan dolly doorbell doormat dowel drawer dresser drill
    dropper drum easel emery envelope eraser fan faucet file flagpole flask
    foghorn folder fork frame funnel gasket gauge gavel gear gimlet girder
    glove glue goblet goggles gong grater griddle grill grindstone hammer
    hamper handle hanger hasp hatch hatchet heater helmet hinge hoe holster
    hook hourglass hydrant inkwell jar jigsaw jug kettle key keyboard kiln
    kite knapsack knob ladder ladle lamp lantern lasso latch lathe lectern
    ledger lever lid lock locker locket loom magnifier mallet mask mat
    matchbox mattress mirror mixer mop mortar mug nail napkin needle net
    nib nozzle oar opener paddle padlock pail paintbrush pallet pan pannier
    parasol pedal peg pen pencil pendulum pestle phone pick pitcher pivot
    plank planter plaque plate platter pliers plug pod pole pouch press
    prism prong prop pulley pump purse quill quiver rack radiator radio
    raft rail rake rasp ratchet razor reel ribbon rivet rod roller rope
    rudder rug ruler sack saddle safe sandal sander satchel saucer saw
    scale scissors scoop screen screw scroll scythe shears sheath shelf
    shim shovel shutter sickle sieve sifter signpost siphon skewer skillet
    sled sledge socket sofa spade spanner spatula spigot spindle spinner
    spool spoon spout sprocket stapler stencil stilt stool stopper stove
    strainer strap stylus swatch switch tack tankard tarp teapot telescope
    tongs toolbox torch tray tripod trowel trunk tub tube turbine tweezers
    urn valve vase vat vault vial vice visor wagon wallet wand wardrobe
    wedge wheel whisk whistle widget winch window wrench yoke zipper
    """,
    "clothing": """
    anorak apparel beanie beret blazer blouse bonnet boot bowtie brogue
    buttonhole cardigan cloak clog coat collar corduroy cuff dress duffel
    earmuff fedora flannel fleece frock gaiter garment gown hat hood jacket
    jersey jumper kilt kimono lapel legging loafer mitten moccasin muffler
    overalls overcoat pajama parka plaid pocket poncho raincoat robe sandal
    sarong sash scarf shawl shirt shoe shoelace slipper smock sneaker sock
    sombrero stitch sweater trouser tunic turban tuxedo twill vest visor
    """,
    "music": """
    accordion allegro alto anthem aria ballad banjo baritone bassoon baton
    bugle cadence carol cello chant chime choir chord chorus clarinet
    clef concerto conga cornet cymbal descant ditty drumbeat duet encore
    ensemble fanfare fiddle flute guitar harmonica harmony harp horn hymn
    jingle kazoo lullaby lute lyric mandolin maraca march marimba medley
    melody minuet note oboe ocarina octave opera operetta organ overture
    piano piccolo quartet recital reed refrain rhythm riff rondo serenade
    sitar solo sonata soprano tabla tambourine tempo tenor timpani tone
    treble trombone trumpet tuba tune ukulele viola violin waltz xylophone
    """,
    "sports_games": """
    archery arena athlete badminton ball baseball basket baton biathlon
    billiard bingo bishop bocce bowler bowling boxing bunker caddy canasta
    catcher checker chess cricket croquet curling cyclist dart decathlon
    defense derby dice discus diver domino dribble dugout fencing fielder
    fitness forward fumble gambit goalie golf gymnast handball hiking
    hockey huddle hurdle infield inning javelin jogger joust judo juggler
    karate kayak kickoff lacrosse lap luge marathon matchup netball pawn
    pitcher playoff polo puck puzzle pylon queen racket rally referee relay
    riddle rink roster rugby runner scrimmage skate ski slalom soccer
    softball sprint squash stadium stopwatch striker surfing tackle tag
    tennis torchbearer tourney trampoline triathlon trophy umpire varsity
    volley wicket wrestling yoga
    """,
    "professions": """
    actor admiral analyst angler apprentice arborist archer architect
    artisan artist athlete attorney auditor author aviator baker barber
    barista bellhop blacksmith botanist brewer builder butler captain
    carpenter cartographer cashier chef chemist clerk coach cobbler composer
    conductor consul cooper courier curator dancer dean dentist deputy
    designer director diver doctor draftsman drummer editor engineer
    ensign explorer falconer farmer forester gardener geologist glazier
    goldsmith grocer guide harpist herald historian hunter inspector
    inventor janitor jeweler jockey judge juggler keeper lawyer librarian
    lifeguard linguist locksmith maestro magician mason mayor mechanic
    mentor merchant messenger miller miner monk navigator notary nurse
    officer oracle painter pharmacist pilot pioneer plumber poet porter
    postman potter printer professor pundit ranger rector referee reporter
    sailor scholar scientist scout sculptor sentinel sentry sheriff
    shepherd singer skipper smith soldier steward surgeon surveyor tailor
    tanner teacher tinker trader trainer trapper treasurer tutor usher
    vintner waiter warden weaver welder yeoman zoologist
    """,
    "buildings_places": """
    abbey airport alcove alley annex apartment aqueduct arcade arch armory
    atrium attic avenue balcony bank barn barrack bastion bazaar belfry
    boardwalk boulevard bridge bungalow bunkhouse cabana cabin cafe campus
    canal capitol carousel castle chalet chapel chateau cinema citadel city
    clinic cloister college colonnade corridor cottage courtyard crossing
    depot diner dock dome dormitory driveway dwelling embassy estate
    factory farmhouse ferry forge fort fortress fountain foyer gallery
    garage garden gate gazebo granary grange greenhouse hall hallway
    hamlet hangar harbor haven hearth hideout highway homestead hospital
    hostel hotel house hut igloo inn jetty keep kiosk kitchen laboratory
    landing lane library lighthouse lobby lodge loft manor mansion market
    mill monument mosque motel museum nook observatory office orchard
    outpost pagoda palace pantry parlor pavilion pier plaza porch portal
    postbox quay ranch rampart refinery refuge rink road rotunda
    schoolhouse shed shelter shipyard silo spire stable staircase stall
    station steeple street studio suburb subway tavern temple terrace
    theater tollbooth tower town trailhead tunnel turret vestibule viaduct
    villa village vineyard walkway warehouse wharf windmill workshop yard
    """,
    "transport": """
    airliner airship balloon barge bicycle biplane blimp boat bobsled
    buggy bus cab caboose caravan cargo carriage cart catamaran chariot
    chassis clipper coach convoy cruiser cutter cycle dinghy dirigible
    dogsled engine ferry flatboat freighter frigate galleon glider gondola
    hatchback helicopter hovercraft jeep jet jetliner kayak ketch
    limousine liner locomotive lorry minivan monorail moped motorbike
    motorcade paddleboat pickup pontoon raft railcar railway rickshaw
    rowboat schooner scooter sedan shuttle sidecar skiff sleigh sloop
    snowplow steamboat steamship streetcar submarine subway tanker taxi
    tractor train tram trawler tricycle trolley truck tugboat unicycle
    van vessel wagon yacht zeppelin
    """,
    "body_health": """
    ankle arm backbone bicep bone brain brow cheek chin dimple ear elbow
    eye eyebrow eyelash fibula finger fist foot forehead freckle gait
    hand heel hip jaw kidney knee knuckle lap limb lung marrow muscle
    neck nerve nostril palm pulse rib shin shoulder sinew skeleton skull
    spine sternum stomach temple tendon thigh thumb toe tongue tooth
    torso vein waist wrist
    """,
    "abstract": """
    ability accord advice allure answer aplomb ardor austerity balance
    banter beauty belief bliss bounty bravado bravery brilliance calm
    candor charisma charm cheer clarity comfort courage courtesy craft
    credence decorum delight dignity diligence duty ease effort elation
    elegance empathy energy esteem ethos fairness faith fame favor fervor
    finesse flair fortune freedom gist glee glory grace gratitude grit
    gumption gusto harmony honesty honor hope humor hunch idea insight
    instinct intellect intrigue jest joy jubilee justice keenness kindness
    knack knowhow laughter leisure levity liberty logic loyalty luck
    maxim merit mettle mirth motive moxie muse mystery nerve notion nuance
    oath order panache pardon patience peace pep pluck poise praise pride
    promise prudence quest quorum reason renown repose resolve respect
    reverie rigor savvy serenity skill solace spirit stamina tact talent
    tenacity theme thrill triumph trust truth unity uplift valor verve
    vigor virtue vision vista warmth whimsy wisdom wit wonder zeal zest
    """,
    "verbs": """
    absorb accept adapt adjust admire adopt advance advise agree aim
    amble amend anchor answer applaud arrange arrive ascend ask assemble
    assist assure attach attend awaken bake balance bask beam beckon
    begin behold believe belong bend bestow blend bloom blossom boost
    borrow bounce braid brew brighten bring browse build burnish carve
    catch celebrate charge chart chat cherish chirp choose chop clap
    clarify classify climb cling coax collect comb combine commend
    compare compile complete compose compute conceive confirm connect
    consider construct consult convene converse convey cook cooperate
    coordinate copy correct counsel count create cruise cultivate dance
    dangle dart dash dazzle decide declare decorate dedicate deliver
    depart depict describe design detect develop devote dig discern
    discover discuss display dive donate doodle draw dream drift drive
    earn echo edit educate elevate embark embrace emerge employ enable
    enact encircle encourage endorse endow engage engrave enjoy enlighten
    enrich enroll ensure enter entertain entrust envision equip escort
    establish esteem evolve examine excel exchange exclaim expand explain
    explore express extend fashion fasten favor feast fetch find finish
    fix flip float flourish flow fly focus fold follow forage forge form
    foster frame frolic fulfill furnish galvanize gather gaze generate
    give glide glimmer glisten glow grasp greet grin grow guard guess
    guide harvest hatch heal hearten help hike hold hone hop hum hurry
    illuminate imagine imprint improve include infer inform inhale
    initiate inquire inscribe insert inspect inspire install instruct
    intend interpret introduce invent invest invite jog join jot journey
    jump keep kindle knead knit know label land laugh launch learn lend
    lift link listen locate look love maintain make manage map marvel
    measure meet mend mentor mingle mix mold motivate move murmur narrate
    navigate negotiate nestle nod note notice nourish nurture obey
    observe obtain offer open orbit organize orient outline paint pause
    pedal perceive perch perform persist persuade photograph pilot pivot
    plan plant play pledge plow polish ponder pour practice praise
    predict prepare present preserve print proceed process proclaim
    produce promote propose protect provide publish pursue quench query
    question queue quote radiate raise rally ramble range reach read
    realize reap reassure rebuild recall receive recite reckon recommend
    record recount recruit refine reflect refresh regard rehearse
    rejoice relate relax release relish remain remark remember remind
    render renew repair repeat reply report request rescue research
    resolve respond restore retain retrieve return reveal review revise
    reward ride rise roam roast rotate row run rush sail salute sample
    saunter save savor say scan schedule scribble search seat secure see
    seek select send serve settle sew shape share sharpen shelter shine
    show signal simmer sing sip sit sketch skip smile soar solve soothe
    sort sow span spark sparkle speak spell spin splash stack stand
    start state stay steer step stitch store stretch stroll study
    succeed suggest summon supply support surmise survey sustain swim
    swing tailor take talk tally tame teach tell tend thank think thrive
    tidy tinker toast tour trace track trade train transform translate
    travel tread treasure treat trek trim trot try tuck tug tutor twirl
    understand unfold unite unlock unveil update uphold use usher utter
    value vault venture verify view visit voice volunteer vouch vow wade
    walk wander watch water wave weave welcome whittle win wish wonder
    work write yield
    """,
    "adjectives": """
    able abundant active adept adroit affable agile alert amiable ample
    ancient antique apt ardent artful astute atomic attentive august
    authentic autumn awake aware balmy beloved benign blissful bold
    bonny boundless brainy brave breezy brief bright brisk broad bubbly
    budding bustling busy calm candid capable carefree careful cheerful
    chief chipper civic civil classic clean clear clever close cogent
    colorful composed concise content cordial cosmic cozy crafty creative
    crisp cunning curious daring dashing dapper dear decent deep deft
    devoted diligent direct discreet distinct divine doughty durable
    dynamic eager earnest easy elastic elder electric elegant eloquent
    eminent endless enormous epic equal esteemed eternal even exact
    excellent expert fabled fair faithful famous fancy fast fearless
    fertile festive fine firm fit fleet flexible fluent fond forthright
    fortunate frank free fresh friendly frosty fruitful full funny
    gallant game generous genial gentle genuine giant gifted glad
    gleaming gleeful glossy golden good graceful gracious grand grateful
    great hale handy happy hardy harmonic healthy hearty helpful heroic
    hidden high honest humble ideal idyllic immense intrepid inventive
    jaunty jolly jovial joyful jubilant just keen kind kindred large
    lasting laudable lavish leading learned legible light likable lively
    local lofty logical loyal lucent lucid lucky luminous lush lyrical
    magnetic main majestic major mannerly marvelous mature measured meek
    mellow merry mighty mindful modern modest moral musical native
    natural neat nifty nimble noble nonstop notable novel obliging open
    optimal orderly organic ornate outgoing patient peaceful peppy
    perfect perky pithy placid plain playful pleasant plucky plush
    poetic poised polite popular portable posh positive powerful
    practical precise premier present pretty prime primary pristine
    private prized profound prompt proper proud prudent punctual pure
    quaint quick quiet radiant rapid rare rational ready refined regal
    relaxed reliable renowned resolute rich right robust rosy rugged
    rustic safe sage salient saintly secure sedate seemly select serene
    sharp shiny shrewd silent simple sincere singular skilled sleek
    smart smooth snappy snug sober social solid sound spacious sparkling
    special spiffy splendid spry stable stalwart staunch steadfast
    steady stellar sterling stoic stout strong sturdy suave sublime
    subtle sunny super supreme sure sweet swift tactful tangible tasteful
    temperate tender thankful thorough thrifty tidy timeless tiny
    tolerant top tranquil trim true trusty ultimate unique upbeat
    upright urbane useful vast verdant versatile vibrant victorious
    vigilant vital vivid warm wealthy welcome whole wholesome willing
    winning wise witty worthy youthful zesty
    """,
    "tech": """
    adapter algorithm archive array backup bandwidth binary bit boolean
    browser buffer byte cache chip circuit client cluster codec compiler
    console cursor data database debug decoder desktop device
    digital diode domain driver email emitter encoder firewall firmware
    folder font format gateway gigabyte hardware hashtag icon index
    input kernel keyword laptop laser login macro mainframe matrix
    megabyte memory modem monitor mouse network node packet parser
    password patch pixel pointer printer program protocol proxy query
    queue relay resistor robot router runtime scanner schema script
    sensor server signal software stack syntax tablet template terminal
    token toolkit upload vector widgetry wireless
    """,
    "misc": """
    account acre addition address almanac alphabet anagram anecdote
    angle answer antic apex arc area arrow article atlas atom autograph
    axis beacon bulletin bundle bureau byline caliber
    calendar caption census chapter charter checklist cipher circle
    citation clause code codex column compendium compound contour copy
    corner couplet coupon crescent cube curve dataset decade diagram
    diameter diary digest digit document dossier draft duo edge edition
    ellipse emblem epilogue equation era errand essay excerpt
    fable fact figure flyer folio footnote formula fraction fragment
    gazette glossary graph grid halo handbook heading hexagon index
    insignia issue italic item journal keystone layout legend lexicon
    line logbook manual margin marker maxim memoir memo minute module
    moment monogram mosaic motto myriad mythos notebook notice novella
    number octagon ode offshoot opus outline oval page pamphlet parable
    paradox passage pattern pentagon phrase pie placard plural poem
    polygon postcard poster prelude primer prologue proverb quadrant
    quatrain quota radius ratio realm recipe record rectangle register
    report rhombus rhyme riddle roster round route saga sample scrapbook
    section sector segment sequel series shape sheet sigil signet sketch
    slogan sonnet source sphere spiral stanza statute story strand streak
    stride stripe stub summary syllable symbol synonym system tale tally
    tangent term tessera testament text texture tier tilde tract
    treatise triangle trio trivia verse version vertex vignette volume
    vowel zone
    """,
    "time_seasons": """
    afternoon age anniversary april august autumn bedtime century
    countdown daybreak daylight december decade dusk epoch evening
    february forenoon fortnight friday harvesttime holiday hour instant
    interval january july june juncture march matinee may midday
    midnight midsummer midweek minute monday month morning noon
    november october overture period prelude saturday season second
    september siesta summer sunday teatime thursday tuesday vernal
    wednesday week weekend year yesteryear
    """,
}


def build() -> list[str]:
    seen = set()
    out = []
    for _, blob in CATEGORIES.items():
        for w in blob.split():
            w = w.strip().lower()
            if not re.fullmatch(r"[a-z]{3,9}", w):
                continue
            if w in seen:
                continue
            seen.add(w)
            out.append(w)
    return sorted(out)


def main() -> int:
    words = build()
    if len(words) < 2048:
        print(f"only {len(words)} words, need >= 2048", file=sys.stderr)
        return 1
    dest = Path(__file__).resolve().parent.parent / "src" / "tokenrelay" / "data" / "wordlist.txt"
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text("\n".join(words) + "\n", encoding="ascii")
    print(f"wrote {len(words)} words to {dest}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
